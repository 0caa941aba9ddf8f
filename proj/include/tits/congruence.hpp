#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "tits/errors.hpp"
#include "tits/extension.hpp"
#include "tits/ff_matrix.hpp"
#include "tits/finite_field.hpp"
#include "tits/matrix.hpp"
#include "tits/number_theory.hpp"
#include "tits/parse.hpp"
#include "tits/rational.hpp"
#include "tits/rational_function.hpp"

namespace tits {

template <class T>
struct is_ext : std::false_type {};
template <class K>
struct is_ext<Ext<K>> : std::true_type {
  using base = K;
};
template <class T>
struct function_field_of {
  using type = T;
};
template <class K>
struct function_field_of<Ext<K>> {
  using type = K;
};

template <class T>
struct is_ratfunc : std::false_type {};
template <class K>
struct is_ratfunc<RatFunc<K>> : std::true_type {
  using base = K;
};

// ---------------------------------------------------------------------------
// Denominators

inline mpz_class int_denominator(const Rational& e) { return e.den(); }
inline mpz_class int_denominator(const Ext<Rational>& e) {
  mpz_class d = 1;
  for (const auto& c : e.rep().coeffs()) d = lcm(d, c.den());
  return d;
}

template <class E>
struct Denominators;

template <>
struct Denominators<Rational> {
  using Mu = mpz_class;
  static Mu one(const RationalField&) { return 1; }
  static Mu of(const Rational& e) { return e.den(); }
  static Mu combine(const Mu& a, const Mu& b) { return lcm(a, b); }
  static std::string str(const Mu& m, const RationalField&) { return m.get_str(); }
};

template <>
struct Denominators<Ext<Rational>> {
  using Mu = mpz_class;
  static Mu one(const ExtField<Rational>&) { return 1; }
  static Mu of(const Ext<Rational>& e) { return int_denominator(e); }
  static Mu combine(const Mu& a, const Mu& b) { return lcm(a, b); }
  static std::string str(const Mu& m, const ExtField<Rational>&) { return m.get_str(); }
};

template <class K>
struct Denominators<RatFunc<K>> {
  using Mu = Poly<K>;
  static Mu one(const RatFuncField<K>& F) { return Poly<K>::constant(F.base()->one()); }
  static Mu of(const RatFunc<K>& e) { return e.den(); }
  static Mu combine(const Mu& a, const Mu& b) { return lcm(a, b); }
  static std::string str(const Mu& m, const RatFuncField<K>& F) { return m.str(F.var()); }
};

template <class K>
struct Denominators<Ext<RatFunc<K>>> {
  using Mu = Poly<K>;
  static Mu one(const ExtField<RatFunc<K>>& F) { return Poly<K>::constant(F.base()->base()->one()); }
  static Mu of(const Ext<RatFunc<K>>& e) {
    Mu d = Poly<K>::constant(e.field()->base()->base()->one());
    for (const auto& c : e.rep().coeffs()) d = lcm(d, c.den());
    return d;
  }
  static Mu combine(const Mu& a, const Mu& b) { return lcm(a, b); }
  static std::string str(const Mu& m, const ExtField<RatFunc<K>>& F) { return m.str(F.base()->var()); }
};

/// Denominator datum mu of the ring generated by the entries of S and S^-1.
template <class E>
struct RingInfo {
  typename Denominators<E>::Mu mu;
  unsigned long characteristic = 0;
  std::string mu_str;
};

template <class E>
std::vector<Matrix<E>> inverses(const std::vector<Matrix<E>>& S) {
  std::vector<Matrix<E>> out;
  out.reserve(S.size());
  for (std::size_t i = 0; i < S.size(); ++i) {
    try {
      out.push_back(S[i].inverse());
    } catch (const MathError&) {
      throw MathError("singular generator at index " + std::to_string(i));
    }
  }
  return out;
}

template <class E>
RingInfo<E> clear_denominators(const std::vector<Matrix<E>>& S) {
  if (S.empty()) throw InputError("empty generating set");
  const auto& F = *S[0].field();
  using D = Denominators<E>;
  typename D::Mu mu = D::one(F);
  auto absorb = [&](const Matrix<E>& g) {
    for (const auto& e : g.entries())
      if (!e.is_zero()) mu = D::combine(mu, D::of(e));
  };
  for (const auto& g : S) absorb(g);
  for (const auto& g : inverses(S)) absorb(g);
  return {mu, F.characteristic(), D::str(mu, F)};
}

// ---------------------------------------------------------------------------
// Admissibility

struct CertificateCheck {
  std::string name;
  bool holds = false;
};

/// Which clause of the connectedness/unipotence theorem makes the map admissible, the
/// facts checked, and the data needed to check them again.
struct AdmissibilityCertificate {
  std::string clause;  // "i", "ii", "i+ii", or "small-characteristic"
  std::vector<CertificateCheck> checks;
  std::uint64_t p = 0;
  int n = 0;
  unsigned long characteristic = 0;
  mpz_class mu = 1;
  std::optional<mpz_class> disc;
  std::optional<unsigned> cyclotomic;
  std::string mu_at_point;
};

bool evaluate_check(const std::string& name, const AdmissibilityCertificate& c);
/// Recomputes every listed check from the stored data.
std::vector<CertificateCheck> recheck(const AdmissibilityCertificate& c);
void add_checks(AdmissibilityCertificate& c, const std::vector<std::string>& names);

/// Smallest odd prime p with p not dividing mu or avoid, p not in forbidden, and p > n when
/// requested.
std::uint64_t select_prime(const mpz_class& mu, int n, bool need_gt_n, const std::set<std::uint64_t>& forbidden,
                           const mpz_class& avoid = 1);

/// The integer search order 0, 1, -1, 2, -2, ...
long point_candidate(int index);

struct WHomOptions {
  std::optional<std::uint64_t> prime;
  std::optional<std::string> point;
  bool force_gt_n = false;
  std::set<std::uint64_t> forbidden;
  std::uint64_t seed = 0x7175;
  int max_point_attempts = 200;
  /// Points to skip in the substitution search (used to vary the map for function fields
  /// of positive characteristic, where the prime is fixed).
  int skip_points = 0;
};

/// A congruence homomorphism GL(n, R) -> GL(n, q) with its certificate.
template <class E>
struct WHomomorphism {
  std::string variant;  // psi1 .. psi4
  std::uint64_t p = 0;
  FieldPtrFF target;
  std::string point;
  std::string factor;
  std::string reduced_poly;
  AdmissibilityCertificate cert;
  int n = 0;
  std::function<std::uint32_t(const E&)> map;

  bool small_characteristic() const { return cert.clause == "small-characteristic"; }
};

template <class E>
FFMatrix apply_whom(const WHomomorphism<E>& psi, const Matrix<E>& g) {
  FFMatrix r(psi.target.get(), g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) r.at(i, j) = psi.map(g(i, j));
  return r;
}

namespace detail {

inline std::uint32_t reduce_rational(const Rational& r, std::uint32_t p) {
  const std::uint32_t d = static_cast<std::uint32_t>(mpz_fdiv_ui(r.den().get_mpz_t(), p));
  if (d == 0) throw MathError("denominator vanishes under the congruence map");
  std::uint64_t num = mpz_fdiv_ui(r.num().get_mpz_t(), p);
  std::uint64_t a = d, m = p;
  // modular inverse of d
  std::int64_t x0 = 1, x1 = 0;
  std::uint64_t aa = a, mm = m;
  while (mm) {
    std::uint64_t q = aa / mm;
    std::int64_t t = x0 - static_cast<std::int64_t>(q) * x1;
    x0 = x1;
    x1 = t;
    std::uint64_t tt = aa - q * mm;
    aa = mm;
    mm = tt;
  }
  std::int64_t inv = x0 % static_cast<std::int64_t>(p);
  if (inv < 0) inv += p;
  return static_cast<std::uint32_t>(num * static_cast<std::uint64_t>(inv) % p);
}

/// Reduction of Q or of a number field modulo p.
template <class K>
struct BaseReduction {
  FieldPtrFF target;
  std::function<std::uint32_t(const K&)> map;
  std::string factor;
};

inline BaseReduction<Rational> reduce_mod_p_rational(std::uint32_t p) {
  BaseReduction<Rational> r;
  r.target = FiniteField::prime_field(p);
  r.map = [p](const Rational& x) { return reduce_rational(x, p); };
  return r;
}

inline BaseReduction<Ext<Rational>> reduce_mod_p_number_field(const ExtField<Rational>& F, std::uint32_t p,
                                                              std::uint64_t seed) {
  IntPoly f;
  for (const auto& c : F.minpoly().coeffs()) f.push_back(c.num());
  auto factors = factor_mod_p(f, p, seed);
  const GFPoly& g = factors.front();
  BaseReduction<Ext<Rational>> r;
  auto Fp = FiniteField::prime_field(p);
  r.factor = gf::str(*Fp, g, "t");
  std::uint32_t root;
  if (gf::degree(g) == 1) {
    r.target = Fp;
    root = Fp->neg(g[0]);
  } else {
    if (std::pow(static_cast<double>(p), gf::degree(g)) > static_cast<double>(FiniteField::kMaxOrder))
      throw WHomUnavailable("residue field GF(" + std::to_string(p) + "^" + std::to_string(gf::degree(g)) +
                            ") is too large");
    r.target = FiniteField::create(p, g, "t");
    root = r.target->generator();
  }
  const FiniteField* T = r.target.get();
  r.map = [T, p, root](const Ext<Rational>& e) {
    const auto& c = e.rep().coeffs();
    std::uint32_t acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = T->add(T->mul(acc, root), reduce_rational(c[k], p));
    return acc;
  };
  return r;
}

template <class K>
BaseReduction<K> base_reduction(const typename K::Field& F, std::uint32_t p, std::uint64_t seed) {
  if constexpr (std::is_same_v<K, Rational>) {
    (void)F;
    (void)seed;
    return reduce_mod_p_rational(p);
  } else {
    return reduce_mod_p_number_field(F, p, seed);
  }
}

template <class K>
K substitute(const RatFunc<K>& e, const K& alpha) {
  K d = e.den().eval(alpha);
  if (d.is_zero()) throw MathError("denominator vanishes at the substitution point");
  return e.num().eval(alpha) / d;
}

inline std::uint32_t eval_in(const Poly<FFElement>& f, const FieldEmbedding& emb, std::uint32_t x) {
  const FiniteField& T = *emb.to;
  std::uint32_t acc = 0;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) acc = T.add(T.mul(acc, x), emb(f.coeffs()[k].code()));
  return acc;
}

inline std::uint32_t substitute_ff(const RatFunc<FFElement>& e, const FieldEmbedding& emb, std::uint32_t alpha) {
  std::uint32_t d = eval_in(e.den(), emb, alpha);
  if (d == 0) throw MathError("denominator vanishes at the substitution point");
  return emb.to->div(eval_in(e.num(), emb, alpha), d);
}

// Point selection over an infinite constant field (Q or a number field).
template <class K>
K select_point_infinite(const Poly<K>& mu, const typename K::Field& P, const WHomOptions& opt) {
  if (opt.point) {
    K a = parse_element<K>(P, *opt.point);
    if (mu.eval(a).is_zero()) throw WHomUnavailable("substitution point " + *opt.point + " is a root of mu");
    return a;
  }
  int skipped = 0;
  for (int i = 0; i < opt.max_point_attempts; ++i) {
    K a = P.from_int(point_candidate(i));
    if (mu.eval(a).is_zero()) continue;
    if (skipped++ < opt.skip_points) continue;
    return a;
  }
  throw WHomUnavailable("no substitution point found");
}

struct FinitePoint {
  FieldExtension ext;  // constant field -> field containing the point
  std::uint32_t alpha = 0;
};

inline FinitePoint select_point_finite(const Poly<FFElement>& mu, const FieldPtrFF& P, const WHomOptions& opt,
                                       std::mt19937_64& rng) {
  if (opt.point) {
    FFElement a = parse_element<FFElement>(*P, *opt.point);
    if (mu.eval(a).is_zero()) throw WHomUnavailable("substitution point " + *opt.point + " is a root of mu");
    return {{P, FieldEmbedding::identity(P), 0}, a.code()};
  }
  int skipped = 0;
  FieldExtension ext{P, FieldEmbedding::identity(P), 0};
  for (unsigned m = 1;; ++m) {
    if (m > 1) {
      if (std::pow(static_cast<double>(P->order()), m) > static_cast<double>(FiniteField::kMaxOrder))
        throw WHomUnavailable("no substitution point found in a small extension of the constant field");
      ext = extend_by_degree(P, m, rng);
    }
    for (std::uint64_t c = 0; c < ext.field->order(); ++c) {
      if (eval_in(mu, ext.embedding, static_cast<std::uint32_t>(c)) == 0) continue;
      if (skipped++ < opt.skip_points) continue;
      return {ext, static_cast<std::uint32_t>(c)};
    }
  }
}

inline std::uint64_t admissible_override(std::uint64_t p, const mpz_class& mu) {
  if (p > (1u << 30) || !is_prime(p)) throw WHomUnavailable("override " + std::to_string(p) + " is not a usable prime");
  if (mu % static_cast<unsigned long>(p) == 0)
    throw WHomUnavailable("prime " + std::to_string(p) + " divides the denominator datum mu");
  return p;
}

template <class E>
std::vector<E> all_entries(const std::vector<Matrix<E>>& S) {
  std::vector<E> out;
  for (const auto& g : S)
    for (const auto& e : g.entries()) out.push_back(e);
  for (const auto& g : inverses(S))
    for (const auto& e : g.entries()) out.push_back(e);
  return out;
}

}  // namespace detail

/// Constructs the congruence homomorphism for the field of S (cases I-IV with one
/// indeterminate).
template <class E>
WHomomorphism<E> build_whom(const std::vector<Matrix<E>>& S, const WHomOptions& opt = {}) {
  using namespace detail;
  if (S.empty()) throw InputError("empty generating set");
  const auto& F = *S[0].field();
  const int n = S[0].n();
  RingInfo<E> ring = clear_denominators(S);
  WHomomorphism<E> psi;
  psi.n = n;
  auto& cert = psi.cert;
  cert.n = n;
  cert.characteristic = F.characteristic();
  std::mt19937_64 rng(opt.seed);

  if constexpr (std::is_same_v<E, Rational>) {
    psi.variant = "psi1";
    cert.mu = ring.mu;
    std::uint64_t p;
    if (opt.prime) {
      p = admissible_override(*opt.prime, ring.mu);
      if (p % 2 == 0 && p <= static_cast<std::uint64_t>(n))
        throw WHomUnavailable("prime 2 is admissible only for n = 1");
    } else {
      p = select_prime(ring.mu, n, opt.force_gt_n, opt.forbidden);
    }
    psi.p = p;
    cert.p = p;
    const bool odd = p % 2 == 1, big = p > static_cast<std::uint64_t>(n);
    cert.clause = odd && big ? "i+ii" : (odd ? "ii" : "i");
    std::vector<std::string> names{"p is prime", "p does not divide mu"};
    if (odd) names.push_back("p is odd");
    if (big) names.push_back("p > n");
    add_checks(cert, names);
    auto red = reduce_mod_p_rational(static_cast<std::uint32_t>(p));
    psi.target = red.target;
    psi.map = red.map;
  } else if constexpr (std::is_same_v<E, Ext<Rational>>) {
    psi.variant = "psi2";
    cert.mu = ring.mu;
    IntPoly f;
    for (const auto& c : F.minpoly().coeffs()) f.push_back(c.num());
    mpz_class avoid;
    if (auto c = cyclotomic_index(f)) {
      cert.cyclotomic = *c;
      avoid = *c;
    } else {
      cert.disc = discriminant(f);
      avoid = *cert.disc;
    }
    std::uint64_t p;
    if (opt.prime) {
      p = admissible_override(*opt.prime, ring.mu);
    } else {
      p = select_prime(ring.mu, n, opt.force_gt_n, opt.forbidden, opt.force_gt_n ? mpz_class(1) : avoid);
    }
    psi.p = p;
    cert.p = p;
    const bool odd = p % 2 == 1, big = p > static_cast<std::uint64_t>(n);
    const bool unramified = avoid % static_cast<unsigned long>(p) != 0;
    const std::string disc_check = cert.cyclotomic ? "p does not divide c" : "p does not divide disc(f)";
    std::vector<std::string> names{"p is prime", "p does not divide mu"};
    if (odd && unramified) {
      names.push_back("p is odd");
      names.push_back(disc_check);
    }
    if (big) names.push_back("p > n");
    if (!(odd && unramified) && !big)
      throw WHomUnavailable("prime " + std::to_string(p) + " is neither unramified and odd nor larger than n");
    cert.clause = (odd && unramified) ? (big ? "i+ii" : "ii") : "i";
    add_checks(cert, names);
    auto red = reduce_mod_p_number_field(F, static_cast<std::uint32_t>(p), opt.seed);
    psi.target = red.target;
    psi.map = red.map;
    psi.factor = red.factor;
  } else if constexpr (is_ratfunc<E>::value || is_ext<E>::value) {
    // function fields and their finite extensions
    using R = typename function_field_of<E>::type;  // RatFunc<K>
    using K = typename is_ratfunc<R>::base;
    const RatFuncField<K>* L;
    if constexpr (is_ratfunc<E>::value)
      L = &F;
    else
      L = F.base();
    psi.variant = is_ratfunc<E>::value ? "psi3" : "psi4";
    const auto& mu = ring.mu;  // Poly<K>
    std::vector<E> entries = all_entries(S);

    // coordinates over the function field for each entry
    auto coords_of = [](const E& e) {
      if constexpr (is_ratfunc<E>::value)
        return std::vector<R>{e};
      else
        return e.rep().coeffs();
    };
    std::vector<R> fcoeffs;
    if constexpr (is_ext<E>::value) fcoeffs = F.minpoly().coeffs();

    if constexpr (std::is_same_v<K, FFElement>) {
      // positive characteristic: substitution alone
      const std::uint64_t p = L->characteristic();
      psi.p = p;
      cert.p = p;
      FinitePoint pt = select_point_finite(mu, FieldPtrFF(L->base(), [](const FiniteField*) {}), opt, rng);
      // keep the constant field alive through the embedding source (owned by the caller)
      const bool big = p > static_cast<std::uint64_t>(n);
      cert.clause = big ? "i" : "small-characteristic";
      cert.mu_at_point = pt.ext.field->element_str(eval_in(mu, pt.ext.embedding, pt.alpha));
      psi.point = pt.ext.field->element_str(pt.alpha);
      if (pt.ext.field->degree() > L->base()->degree())
        psi.point += " in GF(" + std::to_string(pt.ext.field->order()) + ") = " + pt.ext.field->describe();
      add_checks(cert, {big ? "char R = p > n" : "char R = p <= n", "mu(alpha) != 0"});
      FieldEmbedding emb = pt.ext.embedding;
      const std::uint32_t alpha = pt.alpha;
      if constexpr (is_ratfunc<E>::value) {
        psi.target = pt.ext.field;
        psi.map = [emb, alpha](const E& e) { return substitute_ff(e, emb, alpha); };
      } else {
        const FiniteField& T0 = *pt.ext.field;
        GFPoly fbar;
        for (const auto& c : fcoeffs) fbar.push_back(substitute_ff(c, emb, alpha));
        gf::trim(fbar);
        psi.reduced_poly = gf::str(T0, fbar, "t");
        auto facs = gf::factor(T0, fbar, rng);
        const GFPoly g = facs.front().first;
        psi.factor = gf::str(T0, g, "t");
        if (std::pow(static_cast<double>(T0.order()), gf::degree(g)) > static_cast<double>(FiniteField::kMaxOrder))
          throw WHomUnavailable("residue field for the algebraic extension is too large");
        FieldExtension ext2 = extend(pt.ext.field, g, rng);
        psi.target = ext2.field;
        FieldEmbedding emb2 = ext2.embedding;
        const std::uint32_t beta = ext2.root;
        psi.map = [emb, alpha, emb2, beta](const E& e) {
          const FiniteField& T = *emb2.to;
          const auto& c = e.rep().coeffs();
          std::uint32_t acc = 0;
          for (std::size_t k = c.size(); k-- > 0;) acc = T.add(T.mul(acc, beta), emb2(substitute_ff(c[k], emb, alpha)));
          return acc;
        };
      }
    } else {
      // characteristic zero: substitute a point of the constant field, then reduce mod p > n
      const auto& P = *L->base();
      K alpha = select_point_infinite<K>(mu, P, opt);
      psi.point = alpha.str();
      cert.mu_at_point = mu.eval(alpha).str();
      mpz_class mu2 = 1;
      for (const auto& e : entries)
        for (const auto& c : coords_of(e))
          if (!c.is_zero()) mu2 = lcm(mu2, int_denominator(substitute(c, alpha)));
      std::vector<K> ftilde;
      for (const auto& c : fcoeffs) {
        ftilde.push_back(substitute(c, alpha));
        if (!ftilde.back().is_zero()) mu2 = lcm(mu2, int_denominator(ftilde.back()));
      }
      cert.mu = mu2;
      std::uint64_t p;
      if (opt.prime)
        p = admissible_override(*opt.prime, mu2);
      else
        p = select_prime(mu2, n, true, opt.forbidden);
      psi.p = p;
      cert.p = p;
      const bool big = p > static_cast<std::uint64_t>(n);
      cert.clause = big ? "i" : "small-characteristic";
      add_checks(cert, {"mu(alpha) != 0", "p is prime", "p does not divide mu", big ? "p > n" : "p <= n"});
      auto red = base_reduction<K>(P, static_cast<std::uint32_t>(p), opt.seed);
      psi.factor = red.factor;
      if constexpr (is_ratfunc<E>::value) {
        psi.target = red.target;
        auto m = red.map;
        psi.map = [m, alpha](const E& e) { return m(substitute(e, alpha)); };
      } else {
        const FiniteField& T0 = *red.target;
        GFPoly fbar;
        std::vector<std::string> fs;
        for (const auto& c : ftilde) {
          fbar.push_back(red.map(c));
          fs.push_back(c.is_zero() ? "" : c.str());
        }
        gf::trim(fbar);
        psi.reduced_poly = ::tits::detail::format_polynomial(fs, "t");
        auto facs = gf::factor(T0, fbar, rng);
        const GFPoly g = facs.front().first;
        if (!psi.factor.empty()) psi.factor += "; ";
        psi.factor += gf::str(T0, g, "t");
        if (std::pow(static_cast<double>(T0.order()), gf::degree(g)) > static_cast<double>(FiniteField::kMaxOrder))
          throw WHomUnavailable("residue field for the algebraic extension is too large");
        FieldExtension ext2 = extend(red.target, g, rng);
        psi.target = ext2.field;
        auto m = red.map;
        FieldEmbedding emb2 = ext2.embedding;
        const std::uint32_t beta = ext2.root;
        psi.map = [m, alpha, emb2, beta](const E& e) {
          const FiniteField& T = *emb2.to;
          const auto& c = e.rep().coeffs();
          std::uint32_t acc = 0;
          for (std::size_t k = c.size(); k-- > 0;) acc = T.add(T.mul(acc, beta), emb2(m(substitute(c[k], alpha))));
          return acc;
        };
      }
    }
  } else {
    static_assert(sizeof(E) == 0, "unsupported field type");
  }

  for (const auto& c : cert.checks)
    if (!c.holds) throw InternalError("congruence certificate check failed: " + c.name);
  return psi;
}

}  // namespace tits
