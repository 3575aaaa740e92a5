#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gs {

// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitExpectation = 1, kExitParse = 2, kExitInconsistent = 3 };

// Runs the tool on argv-style arguments (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Worker count from GSTRUCT_THREADS (default 1).
int thread_count();

}  // namespace gs
