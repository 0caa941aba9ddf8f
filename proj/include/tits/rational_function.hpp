#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "tits/errors.hpp"
#include "tits/poly.hpp"

namespace tits {

template <class K>
class RatFunc;

/// Univariate rational function field K(x).
template <class K>
class RatFuncField {
 public:
  using Element = RatFunc<K>;
  using Base = typename K::Field;

  RatFuncField(const Base* base, std::string var) : base_(base), var_(std::move(var)) {}

  const Base* base() const { return base_; }
  const std::string& var() const { return var_; }
  unsigned long characteristic() const { return base_->characteristic(); }
  std::string describe() const { return base_->describe() + "(" + var_ + ")"; }

  RatFunc<K> zero() const;
  RatFunc<K> one() const;
  RatFunc<K> from_int(long v) const;
  RatFunc<K> from_mpz(const mpz_class& v) const;
  RatFunc<K> embed(const K& c) const;
  RatFunc<K> variable() const;
  RatFunc<K> from_poly(Poly<K> p) const;
  std::optional<RatFunc<K>> symbol(const std::string& name) const;

 private:
  const Base* base_;
  std::string var_;
};

/// num/den with gcd(num, den) = 1 and den monic; zero is 0/1.
template <class K>
class RatFunc {
 public:
  using Field = RatFuncField<K>;

  RatFunc(const Field* f, Poly<K> num, Poly<K> den) : f_(f), num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  const Field* field() const { return f_; }
  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  RatFunc operator+(const RatFunc& o) const {
    if (den_ == o.den_) {
      if (is_polynomial()) return RatFunc(f_, num_ + o.num_, den_, 0);
      return RatFunc(f_, num_ + o.num_, den_);
    }
    return RatFunc(f_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-() const { return RatFunc(f_, -num_, den_, 0); }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const {
    if (is_polynomial() && o.is_polynomial()) return RatFunc(f_, num_ * o.num_, den_, 0);
    // cross-cancel before multiplying
    Poly<K> g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    return RatFunc(f_, (num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
  }
  RatFunc inv() const {
    if (is_zero()) throw MathError("inverse of zero");
    return RatFunc(f_, den_, num_);
  }
  RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string str() const {
    std::string n = num_.str(f_->var());
    if (is_polynomial()) return n;
    std::string d = den_.str(f_->var());
    if (!detail::is_atomic_term(n)) n = "(" + n + ")";
    if (!detail::is_atomic_term(d) || d.find('/') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  RatFunc(const Field* f, Poly<K> num, Poly<K> den, int) : f_(f), num_(std::move(num)), den_(std::move(den)) {
    if (num_.is_zero()) den_ = Poly<K>::constant(f_->base()->one());
  }

  void normalize() {
    if (den_.is_zero()) throw MathError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly<K>::constant(f_->base()->one());
      return;
    }
    if (den_.degree() > 0) {
      Poly<K> g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    if (!den_.lead().is_one()) {
      K l = den_.lead().inv();
      num_ = num_ * l;
      den_ = den_ * l;
    }
  }

  const Field* f_;
  Poly<K> num_;
  Poly<K> den_;
};

template <class K>
RatFunc<K> RatFuncField<K>::zero() const {
  return RatFunc<K>(this, Poly<K>(base_), Poly<K>::constant(base_->one()));
}
template <class K>
RatFunc<K> RatFuncField<K>::one() const {
  return embed(base_->one());
}
template <class K>
RatFunc<K> RatFuncField<K>::from_int(long v) const {
  return embed(base_->from_int(v));
}
template <class K>
RatFunc<K> RatFuncField<K>::from_mpz(const mpz_class& v) const {
  return embed(base_->from_mpz(v));
}
template <class K>
RatFunc<K> RatFuncField<K>::embed(const K& c) const {
  return RatFunc<K>(this, Poly<K>(base_, {c}), Poly<K>::constant(base_->one()));
}
template <class K>
RatFunc<K> RatFuncField<K>::variable() const {
  return from_poly(Poly<K>::variable(base_));
}
template <class K>
RatFunc<K> RatFuncField<K>::from_poly(Poly<K> p) const {
  return RatFunc<K>(this, std::move(p), Poly<K>::constant(base_->one()));
}
template <class K>
std::optional<RatFunc<K>> RatFuncField<K>::symbol(const std::string& name) const {
  if (name == var_) return variable();
  if (auto c = base_->symbol(name)) return embed(*c);
  return std::nullopt;
}

}  // namespace tits
