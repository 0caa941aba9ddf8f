#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tits/errors.hpp"

namespace tits {

class FFElement;

/// Polynomial over a finite field, element codes low to high, no trailing zeros.
using GFPoly = std::vector<std::uint32_t>;

/// GF(p^d) with elements encoded as integers c0 + c1*p + ... + c_{d-1}*p^{d-1}, where
/// sum c_i t^i is the residue modulo the defining polynomial. Prime-field elements are
/// therefore encoded by their residue. Proper extensions multiply through log/exp tables
/// and are limited to kMaxOrder elements; prime fields use direct modular arithmetic.
class FiniteField {
 public:
  using Element = FFElement;
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

  static std::shared_ptr<const FiniteField> prime_field(std::uint32_t p);
  /// `modulus` is monic of degree d >= 1 with prime-field coefficients, low to high.
  static std::shared_ptr<const FiniteField> create(std::uint32_t p, std::vector<std::uint32_t> modulus,
                                                   std::string var = "z");

  std::uint32_t p() const { return p_; }
  unsigned degree() const { return d_; }
  std::uint64_t order() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const std::string& var() const { return var_; }
  unsigned long characteristic() const { return p_; }
  std::string describe() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (d_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_slow(a, b);
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (d_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_slow(a);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (d_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p_);
    return exp_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t from_integer(long long v) const;
  std::uint32_t from_integer(const mpz_class& v) const;
  /// Class of t (for d == 1 this is the root of the modulus, i.e. 0 for the standard prime field).
  std::uint32_t generator() const { return gen_; }

  std::vector<std::uint32_t> coords(std::uint32_t a) const;
  std::uint32_t from_coords(const std::vector<std::uint32_t>& c) const;
  std::string element_str(std::uint32_t a) const;

  FFElement elem(std::uint32_t v) const;
  FFElement zero() const;
  FFElement one() const;
  FFElement from_int(long v) const;
  FFElement from_mpz(const mpz_class& v) const;
  std::optional<FFElement> symbol(const std::string& name) const;

 private:
  FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus, std::string var);
  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg_slow(std::uint32_t a) const;
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;
  void build_tables();

  std::uint32_t p_;
  unsigned d_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  std::string var_;
  std::uint32_t gen_ = 0;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtrFF = std::shared_ptr<const FiniteField>;

/// Element of a finite field, usable wherever a generic field element is expected.
class FFElement {
 public:
  using Field = FiniteField;

  FFElement() = default;
  FFElement(const FiniteField* f, std::uint32_t v) : f_(f), v_(v) {}

  const Field* field() const { return f_; }
  std::uint32_t code() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  FFElement operator+(const FFElement& o) const { return {f_, f_->add(v_, o.v_)}; }
  FFElement operator-(const FFElement& o) const { return {f_, f_->sub(v_, o.v_)}; }
  FFElement operator*(const FFElement& o) const { return {f_, f_->mul(v_, o.v_)}; }
  FFElement operator/(const FFElement& o) const { return {f_, f_->div(v_, o.v_)}; }
  FFElement operator-() const { return {f_, f_->neg(v_)}; }
  FFElement inv() const { return {f_, f_->inv(v_)}; }

  friend bool operator==(const FFElement& a, const FFElement& b) { return a.v_ == b.v_; }

  std::string str() const { return f_->element_str(v_); }

 private:
  const FiniteField* f_ = nullptr;
  std::uint32_t v_ = 0;
};

/// Polynomial arithmetic and factorization over a finite field.
namespace gf {

void trim(GFPoly& a);
int degree(const GFPoly& a);
GFPoly add(const FiniteField& F, const GFPoly& a, const GFPoly& b);
GFPoly sub(const FiniteField& F, const GFPoly& a, const GFPoly& b);
GFPoly mul(const FiniteField& F, const GFPoly& a, const GFPoly& b);
GFPoly scale(const FiniteField& F, const GFPoly& a, std::uint32_t s);
std::pair<GFPoly, GFPoly> divmod(const FiniteField& F, const GFPoly& a, const GFPoly& b);
GFPoly mod(const FiniteField& F, const GFPoly& a, const GFPoly& b);
GFPoly monic(const FiniteField& F, const GFPoly& a);
GFPoly gcd(const FiniteField& F, GFPoly a, GFPoly b);
GFPoly derivative(const FiniteField& F, const GFPoly& a);
GFPoly powmod(const FiniteField& F, const GFPoly& base, const mpz_class& e, const GFPoly& m);
std::uint32_t eval(const FiniteField& F, const GFPoly& a, std::uint32_t x);
std::string str(const FiniteField& F, const GFPoly& a, const std::string& var = "t");

/// Rabin irreducibility test.
bool is_irreducible(const FiniteField& F, const GFPoly& f);

/// Irreducible factors with multiplicity, each monic, sorted by degree then by
/// coefficient vectors compared lexicographically from the constant term.
/// Equal-degree splitting is Cantor-Zassenhaus driven by `rng`.
std::vector<std::pair<GFPoly, unsigned>> factor(const FiniteField& F, const GFPoly& f, std::mt19937_64& rng);

/// Distinct roots in F, ascending by code.
std::vector<std::uint32_t> roots(const FiniteField& F, const GFPoly& f, std::mt19937_64& rng);

/// A monic irreducible polynomial of the given degree (first found by seeded search).
GFPoly random_irreducible(const FiniteField& F, unsigned degree, std::mt19937_64& rng);

bool less(const GFPoly& a, const GFPoly& b);

}  // namespace gf

/// Field homomorphism GF(p^a) -> GF(p^b) fixed by the image of the class of t.
struct FieldEmbedding {
  FieldPtrFF from;
  FieldPtrFF to;
  std::uint32_t gen_image = 0;

  std::uint32_t operator()(std::uint32_t a) const;
  GFPoly map(const GFPoly& f) const;
  static FieldEmbedding identity(const FieldPtrFF& f) { return {f, f, f->generator()}; }
};

/// Result of adjoining a root of an irreducible polynomial to a finite field.
struct FieldExtension {
  FieldPtrFF field;
  FieldEmbedding embedding;  // base -> field
  std::uint32_t root = 0;     // root of the adjoined polynomial, in `field`
};

/// Adjoin a root of `g` (irreducible over `base`). The result is a flat GF(p^(d*deg g)).
FieldExtension extend(const FieldPtrFF& base, const GFPoly& g, std::mt19937_64& rng);

/// Degree-m extension of `base` (adjoins a root of a seeded irreducible polynomial).
FieldExtension extend_by_degree(const FieldPtrFF& base, unsigned m, std::mt19937_64& rng);

}  // namespace tits
