#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "germinv/error.hpp"
#include "germinv/polynomial.hpp"

namespace germinv {

// Recursive-descent parser for polynomial expressions.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+' | '-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer ('/' integer)? | identifier | '(' expr ')'
//
// Identifiers are [A-Za-z][A-Za-z0-9_]* with an optional trailing
// apostrophe. Multiplication is never implicit. The U+2212 minus sign is
// accepted as '-'.
class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, Ring ring) : text_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    Polynomial p = expr();
    skip_ws();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Consumes an ASCII operator, or U+2212 when `c` is '-'.
  bool accept(char c) {
    skip_ws();
    if (at_end()) return false;
    if (text_[pos_] == c) {
      ++pos_;
      return true;
    }
    if (c == '-' && text_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (accept('*')) acc *= unary();
    return acc;
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('-')) throw ParseError("negative exponent", at);
      if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        throw ParseError("expected nonnegative integer exponent", pos_);
      const std::string digits = read_digits();
      if (digits.size() > 6) throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(read_digits());
      const std::size_t save = pos_;
      skip_ws();
      if (!at_end() && text_[pos_] == '/') {
        ++pos_;
        skip_ws();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          throw ParseError("expected integer denominator", pos_);
        const std::size_t den_at = pos_;
        mpz_class den(read_digits());
        if (den == 0) throw ParseError("zero denominator", den_at);
        value /= Rational(den);
        value.canonicalize();
      } else {
        pos_ = save;
      }
      return Polynomial::constant(ring_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      if (!at_end() && text_[pos_] == '\'') ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      return Polynomial::variable(ring_, *idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  Ring ring_;
  std::size_t pos_ = 0;
};

inline Polynomial parse_polynomial(std::string_view text, const Ring& ring) {
  return PolynomialParser(text, ring).parse();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw InputError("empty rational literal");
  s = s.substr(b, e - b + 1);
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool slash = false, digits = false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (std::isdigit(static_cast<unsigned char>(s[k]))) digits = true;
    else if (s[k] == '/' && !slash && digits && k + 1 < s.size()) slash = true;
    else throw InputError("malformed rational literal '" + s + "'");
  }
  if (!digits) throw InputError("malformed rational literal '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw InputError("malformed rational literal '" + s + "'");
  if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace germinv
