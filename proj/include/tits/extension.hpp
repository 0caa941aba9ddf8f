#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "tits/errors.hpp"
#include "tits/poly.hpp"

namespace tits {

template <class K>
class Ext;

/// Simple algebraic extension K[t]/(f) for a monic irreducible f of degree >= 2.
/// Number fields are Ext<Rational>; algebraic function fields are Ext<RatFunc<...>>.
template <class K>
class ExtField {
 public:
  using Element = Ext<K>;
  using Base = typename K::Field;

  ExtField(const Base* base, Poly<K> minpoly, std::string var)
      : base_(base), f_(std::move(minpoly)), var_(std::move(var)) {
    if (f_.degree() < 2) throw InputError("extension polynomial must have degree >= 2");
    if (!f_.lead().is_one()) throw InputError("extension polynomial must be monic");
  }

  const Base* base() const { return base_; }
  const Poly<K>& minpoly() const { return f_; }
  int degree() const { return f_.degree(); }
  const std::string& var() const { return var_; }
  unsigned long characteristic() const { return base_->characteristic(); }
  std::string describe() const { return base_->describe() + "[" + var_ + "]/(" + f_.str(var_) + ")"; }

  Ext<K> zero() const;
  Ext<K> one() const;
  Ext<K> from_int(long v) const;
  Ext<K> from_mpz(const mpz_class& v) const;
  Ext<K> embed(const K& c) const;
  Ext<K> generator() const;
  Ext<K> from_coords(std::vector<K> c) const;
  std::optional<Ext<K>> symbol(const std::string& name) const;

 private:
  const Base* base_;
  Poly<K> f_;
  std::string var_;
};

template <class K>
class Ext {
 public:
  using Field = ExtField<K>;

  Ext(const Field* f, Poly<K> rep) : f_(f), rep_(std::move(rep)) {
    if (rep_.degree() >= f_->degree()) rep_ = rep_ % f_->minpoly();
  }

  const Field* field() const { return f_; }
  const Poly<K>& rep() const { return rep_; }
  /// Coordinates on the power basis, always of length deg f.
  std::vector<K> coords() const {
    std::vector<K> c(f_->degree(), f_->base()->zero());
    for (std::size_t i = 0; i < rep_.coeffs().size(); ++i) c[i] = rep_.coeffs()[i];
    return c;
  }
  K coord(int i) const { return rep_.coeff(i); }

  bool is_zero() const { return rep_.is_zero(); }
  bool is_one() const { return rep_.is_one(); }

  Ext operator+(const Ext& o) const { return Ext(f_, rep_ + o.rep_, 0); }
  Ext operator-(const Ext& o) const { return Ext(f_, rep_ - o.rep_, 0); }
  Ext operator-() const { return Ext(f_, -rep_, 0); }
  Ext operator*(const Ext& o) const {
    if (is_zero() || o.is_zero()) return f_->zero();
    return Ext(f_, rep_ * o.rep_);
  }
  Ext inv() const {
    if (is_zero()) throw MathError("inverse of zero");
    auto [g, s, t] = xgcd(rep_, f_->minpoly());
    if (g.degree() != 0) throw MathError("zero divisor in extension (defining polynomial is reducible)");
    return Ext(f_, s);
  }
  Ext operator/(const Ext& o) const { return *this * o.inv(); }

  friend bool operator==(const Ext& a, const Ext& b) { return a.rep_ == b.rep_; }

  std::string str() const { return rep_.str(f_->var()); }

 private:
  Ext(const Field* f, Poly<K> rep, int) : f_(f), rep_(std::move(rep)) {}

  const Field* f_;
  Poly<K> rep_;
};

template <class K>
Ext<K> ExtField<K>::zero() const {
  return Ext<K>(this, Poly<K>(base_));
}
template <class K>
Ext<K> ExtField<K>::one() const {
  return embed(base_->one());
}
template <class K>
Ext<K> ExtField<K>::from_int(long v) const {
  return embed(base_->from_int(v));
}
template <class K>
Ext<K> ExtField<K>::from_mpz(const mpz_class& v) const {
  return embed(base_->from_mpz(v));
}
template <class K>
Ext<K> ExtField<K>::embed(const K& c) const {
  return Ext<K>(this, Poly<K>(base_, {c}));
}
template <class K>
Ext<K> ExtField<K>::generator() const {
  return Ext<K>(this, Poly<K>::variable(base_));
}
template <class K>
Ext<K> ExtField<K>::from_coords(std::vector<K> c) const {
  if (static_cast<int>(c.size()) > degree()) throw InputError("too many coordinates for extension element");
  return Ext<K>(this, Poly<K>(base_, std::move(c)));
}
template <class K>
std::optional<Ext<K>> ExtField<K>::symbol(const std::string& name) const {
  if (name == var_) return generator();
  if (auto c = base_->symbol(name)) return embed(*c);
  return std::nullopt;
}

}  // namespace tits
