#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "tits/errors.hpp"

namespace tits {

namespace detail {

// expr   := term (('+' | '-') term)*
// term   := unary (('*' | '/') unary)*
// unary  := '-' unary | power
// power  := atom ('^' ['-'] integer)?
// atom   := integer | symbol | '(' expr ')'
template <class E>
class ElementParser {
 public:
  using Field = typename E::Field;

  ElementParser(const Field& f, const std::string& s) : f_(f), s_(s) {}

  E parse() {
    E v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("cannot parse \"" + s_ + "\" at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  E expr() {
    E v = term();
    for (;;) {
      if (eat('+'))
        v = v + term();
      else if (eat('-'))
        v = v - term();
      else
        return v;
    }
  }

  E term() {
    E v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        E d = unary();
        if (d.is_zero()) fail("division by zero");
        v = v / d;
      } else {
        return v;
      }
    }
  }

  E unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  E power() {
    E base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 9) fail("exponent too large");
    long e = std::stol(s_.substr(start, pos_ - start));
    if (neg) {
      if (base.is_zero()) fail("negative power of zero");
      base = base.inv();
    }
    E acc = f_.one();
    while (e > 0) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

  E atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      E v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return f_.from_mpz(mpz_class(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto v = f_.symbol(name);
      if (!v) {
        pos_ = start;
        fail("unknown symbol '" + name + "'");
      }
      return *v;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Field& f_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse an element string over `f`. Integers, the field's generator symbols, + - * / ^
/// and parentheses are accepted; the output of E::str() always parses back.
template <class E>
E parse_element(const typename E::Field& f, const std::string& s) {
  return detail::ElementParser<E>(f, s).parse();
}

}  // namespace tits
