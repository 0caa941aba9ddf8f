#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tits/errors.hpp"

namespace tits {

namespace detail {

// True when `s` can be used as a factor in "s*var" without parentheses.
inline bool is_atomic_term(const std::string& s) {
  return !s.empty() && s.find_first_of(" +-()") == std::string::npos;
}

// Render sum_i coeff_strs[i]*var^i, highest degree first. Empty strings mark zero terms.
inline std::string format_polynomial(const std::vector<std::string>& coeff_strs, const std::string& var) {
  std::string out;
  for (std::size_t k = coeff_strs.size(); k-- > 0;) {
    const std::string& s = coeff_strs[k];
    if (s.empty()) continue;
    bool neg = false;
    std::string mag = s;
    if (s[0] == '-' && is_atomic_term(s.substr(1))) {
      neg = true;
      mag = s.substr(1);
    }
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    std::string term;
    if (k == 0) {
      term = is_atomic_term(mag) ? mag : "(" + mag + ")";
    } else if (mag == "1") {
      term = mono;
    } else {
      term = (is_atomic_term(mag) ? mag : "(" + mag + ")") + "*" + mono;
    }
    if (out.empty()) {
      out = neg ? "-" + term : term;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Dense univariate polynomial over a field element type E, coefficients low to high.
/// The zero polynomial has no coefficients and degree -1.
template <class E>
class Poly {
 public:
  using Field = typename E::Field;

  explicit Poly(const Field* f) : f_(f) {}
  Poly(const Field* f, std::vector<E> c) : f_(f), c_(std::move(c)) { trim(); }

  static Poly constant(const E& c) { return Poly(c.field(), {c}); }
  static Poly monomial(const E& c, int deg) {
    std::vector<E> v(static_cast<std::size_t>(deg) + 1, c.field()->zero());
    v.back() = c;
    return Poly(c.field(), std::move(v));
  }
  static Poly variable(const Field* f) { return Poly(f, {f->zero(), f->one()}); }

  const Field* field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  const std::vector<E>& coeffs() const { return c_; }
  E coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : f_->zero(); }
  const E& lead() const { return c_.back(); }

  Poly operator+(const Poly& o) const {
    std::vector<E> r(std::max(c_.size(), o.c_.size()), f_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return Poly(f_, std::move(r));
  }
  Poly operator-() const {
    std::vector<E> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(-a);
    return Poly(f_, std::move(r));
  }
  Poly operator-(const Poly& o) const { return *this + (-o); }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(f_);
    std::vector<E> r(c_.size() + o.c_.size() - 1, f_->zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return Poly(f_, std::move(r));
  }
  Poly operator*(const E& s) const {
    std::vector<E> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(a * s);
    return Poly(f_, std::move(r));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; throws on division by the zero polynomial.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw MathError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(a.f_), a};
    std::vector<E> rem = a.c_;
    std::vector<E> quo(a.c_.size() - b.c_.size() + 1, a.f_->zero());
    const E lead_inv = b.lead().inv();
    const int db = b.degree();
    for (int k = a.degree(); k >= db; --k) {
      if (rem[k].is_zero()) continue;
      E q = rem[k] * lead_inv;
      quo[k - db] = q;
      for (int j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - q * b.c_[j];
    }
    rem.erase(rem.begin() + db, rem.end());
    return {Poly(a.f_, std::move(quo)), Poly(a.f_, std::move(rem))};
  }
  Poly operator%(const Poly& o) const { return divmod(*this, o).second; }
  Poly operator/(const Poly& o) const { return divmod(*this, o).first; }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * lead().inv();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly(f_);
    std::vector<E> r;
    r.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * f_->from_int(static_cast<long>(i)));
    return Poly(f_, std::move(r));
  }

  E eval(const E& x) const {
    E acc = f_->zero();
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  std::string str(const std::string& var) const {
    std::vector<std::string> parts(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) parts[i] = c_[i].str();
    return detail::format_polynomial(parts, var);
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  const Field* f_;
  std::vector<E> c_;
};

/// Monic greatest common divisor (zero if both inputs are zero).
template <class E>
Poly<E> gcd(Poly<E> a, Poly<E> b) {
  while (!b.is_zero()) {
    Poly<E> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g and g monic.
template <class E>
std::tuple<Poly<E>, Poly<E>, Poly<E>> xgcd(const Poly<E>& a, const Poly<E>& b) {
  const auto* f = a.field();
  Poly<E> r0 = a, r1 = b;
  Poly<E> s0 = Poly<E>::constant(f->one()), s1(f);
  Poly<E> t0(f), t1 = Poly<E>::constant(f->one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly<E> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly<E> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  E li = r0.lead().inv();
  return {r0 * li, s0 * li, t0 * li};
}

template <class E>
Poly<E> lcm(const Poly<E>& a, const Poly<E>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<E>(a.field());
  return ((a * b) / gcd(a, b)).monic();
}

/// Squarefree part m / gcd(m, m') made monic. Valid in characteristic zero.
template <class E>
Poly<E> squarefree_part(const Poly<E>& m) {
  Poly<E> g = gcd(m, m.derivative());
  return (m / g).monic();
}

}  // namespace tits
