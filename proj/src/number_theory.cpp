#include "tits/number_theory.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "tits/poly.hpp"
#include "tits/rational.hpp"

namespace tits {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

void trim(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly<Rational> to_rational(const IntPoly& f) {
  std::vector<Rational> c;
  c.reserve(f.size());
  for (const auto& a : f) c.emplace_back(mpq_class(a));
  return Poly<Rational>(&RationalField::instance(), std::move(c));
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
  IntPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Reduce coefficients into [0, m).
IntPoly mod_coeffs(IntPoly a, const mpz_class& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  trim(a);
  return a;
}

IntPoly symmetric(IntPoly a, const mpz_class& m) {
  a = mod_coeffs(std::move(a), m);
  const mpz_class half = m / 2;
  for (auto& c : a)
    if (c > half) c -= m;
  trim(a);
  return a;
}

// Exact division by a monic divisor; returns the remainder through `rem`.
IntPoly divmod_monic(const IntPoly& a, const IntPoly& b, IntPoly& rem) {
  rem = a;
  if (a.size() < b.size()) return {};
  IntPoly quo(a.size() - b.size() + 1, 0);
  const std::size_t db = b.size() - 1;
  for (std::size_t k = a.size(); k-- > db;) {
    mpz_class q = rem[k];
    if (q == 0) continue;
    quo[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b[j];
  }
  rem.resize(db);
  trim(rem);
  trim(quo);
  return quo;
}

IntPoly from_gf(const GFPoly& g) {
  IntPoly r;
  r.reserve(g.size());
  for (auto c : g) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

GFPoly to_gf(const IntPoly& f, std::uint32_t p) { return reduce_mod_p(f, p); }

// Lift f = g*h (mod p) to (mod modulus); g, h monic and coprime mod p, f monic.
std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& f, const GFPoly& g, const GFPoly& h, std::uint32_t p,
                                             const mpz_class& modulus) {
  auto F = FiniteField::prime_field(p);
  // s*g + t*h = 1 over GF(p)
  std::vector<FFElement> gc, hc;
  for (auto c : g) gc.push_back(F->elem(c));
  for (auto c : h) hc.push_back(F->elem(c));
  auto [d, s_poly, t_poly] = xgcd(Poly<FFElement>(F.get(), gc), Poly<FFElement>(F.get(), hc));
  if (d.degree() != 0) throw InternalError("Hensel lifting of non-coprime factors");
  GFPoly s, t;
  for (const auto& c : s_poly.coeffs()) s.push_back(c.code());
  for (const auto& c : t_poly.coeffs()) t.push_back(c.code());
  gf::trim(s);
  gf::trim(t);

  IntPoly G = from_gf(g), H = from_gf(h);
  mpz_class m = p;
  while (m < modulus) {
    IntPoly e = mod_coeffs(sub(f, mul(G, H)), modulus);
    for (auto& c : e) c /= m;
    GFPoly eb = to_gf(e, p);
    auto [q, r] = gf::divmod(*F, gf::mul(*F, t, eb), g);
    GFPoly dh = gf::add(*F, gf::mul(*F, s, eb), gf::mul(*F, q, h));
    IntPoly dG = from_gf(r), dH = from_gf(dh);
    for (auto& c : dG) c *= m;
    for (auto& c : dH) c *= m;
    IntPoly G2 = G, H2 = H;
    G2.resize(std::max(G2.size(), dG.size()), 0);
    H2.resize(std::max(H2.size(), dH.size()), 0);
    for (std::size_t i = 0; i < dG.size(); ++i) G2[i] += dG[i];
    for (std::size_t i = 0; i < dH.size(); ++i) H2[i] += dH[i];
    G = mod_coeffs(G2, modulus);
    H = mod_coeffs(H2, modulus);
    m *= p;
  }
  return {G, H};
}

std::vector<unsigned> factor_degrees(const std::vector<GFPoly>& facs) {
  std::vector<unsigned> d;
  for (const auto& f : facs) d.push_back(static_cast<unsigned>(gf::degree(f)));
  return d;
}

std::vector<bool> subset_sums(const std::vector<unsigned>& degs, unsigned total) {
  std::vector<bool> ok(total + 1, false);
  ok[0] = true;
  for (auto d : degs)
    for (unsigned s = total + 1; s-- > d;)
      if (ok[s - d]) ok[s] = true;
  return ok;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

mpz_class resultant(const IntPoly& a0, const IntPoly& b0) {
  Poly<Rational> a = to_rational(a0), b = to_rational(b0);
  if (a.is_zero() || b.is_zero()) throw MathError("resultant of the zero polynomial");
  Rational acc(1L);
  for (;;) {
    const int m = a.degree(), n = b.degree();
    if (n == 0) {
      Rational r(1L);
      for (int i = 0; i < m; ++i) r = r * b.lead();
      acc = acc * r;
      break;
    }
    Poly<Rational> r = a % b;
    if (r.is_zero()) return 0;
    // Res(a,b) = (-1)^(mn) lc(b)^(m - deg r) Res(b, r)
    if ((m * n) % 2 == 1) acc = -acc;
    for (int i = 0; i < m - r.degree(); ++i) acc = acc * b.lead();
    a = std::move(b);
    b = std::move(r);
  }
  if (acc.den() != 1) throw InternalError("non-integral resultant");
  return acc.num();
}

mpz_class discriminant(const IntPoly& f0) {
  IntPoly f = f0;
  trim(f);
  if (f.size() < 2 || f.back() != 1) throw MathError("discriminant requires a monic polynomial of degree >= 1");
  const long k = static_cast<long>(f.size()) - 1;
  if (k == 1) return 1;
  IntPoly df(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) df[i - 1] = f[i] * static_cast<unsigned long>(i);
  mpz_class r = resultant(f, df);
  if ((k * (k - 1) / 2) % 2 == 1) r = -r;
  return r;
}

GFPoly reduce_mod_p(const IntPoly& f, std::uint32_t p) {
  GFPoly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpz_class r = f[i] % p;
    if (r < 0) r += p;
    g[i] = static_cast<std::uint32_t>(r.get_ui());
  }
  gf::trim(g);
  return g;
}

std::vector<GFPoly> factor_mod_p(const IntPoly& f, std::uint32_t p, std::uint64_t seed) {
  if (!is_prime(p)) throw MathError("factor_mod_p requires a prime modulus");
  auto F = FiniteField::prime_field(p);
  std::mt19937_64 rng(seed);
  GFPoly g = reduce_mod_p(f, p);
  std::vector<GFPoly> out;
  if (gf::degree(g) < 1) return out;
  for (auto& [fac, mult] : gf::factor(*F, g, rng))
    for (unsigned i = 0; i < mult; ++i) out.push_back(fac);
  return out;
}

bool is_irreducible_over_q(const IntPoly& f0) {
  IntPoly f = f0;
  trim(f);
  if (f.size() < 2 || f.back() != 1) throw MathError("irreducibility test requires a monic polynomial");
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (k == 1) return true;
  {
    Poly<Rational> fq = to_rational(f);
    if (gcd(fq, fq.derivative()).degree() > 0) return false;
  }
  const mpz_class disc = discriminant(f);

  std::vector<bool> possible(k + 1, true);
  std::uint32_t best_p = 0;
  std::vector<GFPoly> best;
  unsigned good = 0;
  for (std::uint64_t p = 3; good < 24; p = next_prime(p)) {
    if (disc % static_cast<unsigned long>(p) == 0) continue;
    ++good;
    auto facs = factor_mod_p(f, static_cast<std::uint32_t>(p));
    if (facs.size() == 1) return true;
    auto sums = subset_sums(factor_degrees(facs), k);
    bool any = false;
    for (unsigned d = 1; d < k; ++d) {
      possible[d] = possible[d] && sums[d];
      any = any || possible[d];
    }
    if (!any) return true;
    if (best.empty() || facs.size() < best.size()) {
      best = facs;
      best_p = static_cast<std::uint32_t>(p);
    }
  }

  // Hensel lift the factorization with the fewest factors and try recombinations.
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  mpz_class bound = norm << k;
  mpz_class modulus = best_p;
  while (modulus <= 2 * bound) modulus *= best_p;

  auto F = FiniteField::prime_field(best_p);
  std::vector<IntPoly> lifted;
  IntPoly current = mod_coeffs(f, modulus);
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    GFPoly rest{1};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = gf::mul(*F, rest, best[j]);
    auto [G, H] = hensel_lift_pair(current, best[i], rest, best_p, modulus);
    lifted.push_back(G);
    current = H;
  }
  lifted.push_back(current);

  const std::size_t r = lifted.size();
  if (r > 20) throw MathError("irreducibility test: too many modular factors to recombine");
  for (std::uint32_t mask = 1; mask < (1u << r) - 1; ++mask) {
    const unsigned size = static_cast<unsigned>(__builtin_popcount(mask));
    if (2 * size > r) continue;
    unsigned deg = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1u << i)) deg += static_cast<unsigned>(gf::degree(best[i]));
    if (!possible[deg]) continue;
    IntPoly prod{1};
    for (std::size_t i = 0; i < r; ++i)
      if (mask & (1u << i)) prod = mod_coeffs(mul(prod, lifted[i]), modulus);
    prod = symmetric(prod, modulus);
    IntPoly rem;
    divmod_monic(f, prod, rem);
    if (rem.empty()) return false;
  }
  return true;
}

IntPoly cyclotomic_polynomial(unsigned c) {
  static std::map<unsigned, IntPoly> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
  }
  if (c == 0) throw MathError("cyclotomic polynomial index must be positive");
  IntPoly num(c + 1, 0);
  num[0] = -1;
  num[c] = 1;
  for (unsigned d = 1; d < c; ++d) {
    if (c % d != 0) continue;
    IntPoly rem;
    num = divmod_monic(num, cyclotomic_polynomial(d), rem);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[c] = num;
  return num;
}

std::optional<unsigned> cyclotomic_index(const IntPoly& f0) {
  IntPoly f = f0;
  trim(f);
  if (f.size() < 2) return std::nullopt;
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  // phi(c) >= sqrt(c/2), so phi(c) = k forces c <= 2k^2
  for (unsigned c = 1; c <= 2 * k * k + 2; ++c) {
    unsigned phi = c, m = c;
    for (unsigned p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        while (m % p == 0) m /= p;
        phi -= phi / p;
      }
    }
    if (m > 1) phi -= phi / m;
    if (phi != k) continue;
    if (cyclotomic_polynomial(c) == f) return c;
  }
  return std::nullopt;
}

}  // namespace tits
