#include <iostream>

#include "gstruct/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gs::run_cli(args, std::cout, std::cerr);
}
