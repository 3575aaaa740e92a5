#include "gstruct/expr.hpp"

#include <cctype>

namespace gs {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  RawPoly parse() {
    RawPoly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RawPoly expr() {
    RawPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = raw_add(acc, term());
      } else if (accept('-')) {
        acc = raw_add(acc, raw_scale(term(), -1));
      } else {
        return acc;
      }
    }
  }

  RawPoly term() {
    RawPoly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = raw_mul(acc, unary());
      } else if (accept('/')) {
        std::size_t at = pos_;
        RawPoly d = unary();
        if (d.empty()) throw ParseError("division by zero", at);
        if (d.size() != 1 || !d.begin()->first.empty())
          throw ParseError("division by a non-constant", at);
        acc = raw_scale(acc, Rational(1) / d.begin()->second);
      } else {
        return acc;
      }
    }
  }

  RawPoly unary() {
    if (accept('-')) return raw_scale(unary(), -1);
    if (accept('+')) return unary();
    return power();
  }

  RawPoly power() {
    RawPoly base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected integer exponent", start);
      if (pos_ - start > 6) throw ParseError("exponent too large", start);
      base = raw_pow(base, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  RawPoly atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RawPoly p = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return raw_constant(Rational(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return raw_generator(s_.substr(start, pos_ - start));
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

RawPoly parse_raw(const std::string& text) { return Parser(text).parse(); }

std::pair<std::string, std::string> split_relation(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) throw ParseError("relation needs '='", 0);
  if (text.find('=', eq + 1) != std::string::npos) throw ParseError("more than one '='", eq);
  return {text.substr(0, eq), text.substr(eq + 1)};
}

}  // namespace gs
