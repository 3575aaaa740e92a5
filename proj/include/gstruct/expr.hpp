#pragma once

#include <stdexcept>
#include <string>

#include "gstruct/ring.hpp"

namespace gs {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | identifier | '(' expr ')'
// Division is only allowed by nonzero constants.
RawPoly parse_raw(const std::string& text);

// "lhs = rhs" split on the single '='.
std::pair<std::string, std::string> split_relation(const std::string& text);

}  // namespace gs
