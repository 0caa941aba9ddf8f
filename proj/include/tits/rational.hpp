#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "tits/errors.hpp"

namespace tits {

class Rational;

/// The field of rational numbers. Stateless; one shared instance.
class RationalField {
 public:
  using Element = Rational;

  static const RationalField& instance() {
    static const RationalField f;
    return f;
  }

  Rational zero() const;
  Rational one() const;
  Rational from_int(long v) const;
  Rational from_mpz(const mpz_class& v) const;
  unsigned long characteristic() const { return 0; }
  std::string describe() const { return "Q"; }
  std::optional<Rational> symbol(const std::string&) const;
};

class Rational {
 public:
  using Field = RationalField;

  Rational() = default;
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }
  explicit Rational(long v) : v_(v) {}
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw MathError("rational with zero denominator");
    v_.canonicalize();
  }

  const Field* field() const { return &RationalField::instance(); }
  const mpq_class& value() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  Rational operator+(const Rational& o) const { return from_raw(v_ + o.v_); }
  Rational operator-(const Rational& o) const { return from_raw(v_ - o.v_); }
  Rational operator*(const Rational& o) const { return from_raw(v_ * o.v_); }
  Rational operator/(const Rational& o) const {
    if (o.is_zero()) throw MathError("division by zero");
    return from_raw(v_ / o.v_);
  }
  Rational operator-() const { return from_raw(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  Rational inv() const {
    if (is_zero()) throw MathError("inverse of zero");
    return from_raw(1 / v_);
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

  std::string str() const { return v_.get_str(); }

 private:
  static Rational from_raw(mpq_class v) {
    Rational r;
    r.v_ = std::move(v);
    return r;
  }
  mpq_class v_{0};
};

inline Rational RationalField::zero() const { return Rational(0L); }
inline Rational RationalField::one() const { return Rational(1L); }
inline Rational RationalField::from_int(long v) const { return Rational(v); }
inline std::optional<Rational> RationalField::symbol(const std::string&) const { return std::nullopt; }
inline Rational RationalField::from_mpz(const mpz_class& v) const { return Rational(mpq_class(v)); }

}  // namespace tits
