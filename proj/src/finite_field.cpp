#include "tits/finite_field.hpp"

#include <algorithm>

#include "tits/number_theory.hpp"
#include "tits/poly.hpp"

namespace tits {

FiniteField::FiniteField(std::uint32_t p, std::vector<std::uint32_t> modulus, std::string var)
    : p_(p), d_(static_cast<unsigned>(modulus.size() - 1)), q_(1), modulus_(std::move(modulus)), var_(std::move(var)) {
  for (unsigned i = 0; i < d_; ++i) q_ *= p_;
}

std::shared_ptr<const FiniteField> FiniteField::prime_field(std::uint32_t p) { return create(p, {0, 1}); }

std::shared_ptr<const FiniteField> FiniteField::create(std::uint32_t p, std::vector<std::uint32_t> modulus,
                                                       std::string var) {
  if (!is_prime(p) || p >= (std::uint32_t{1} << 31)) throw InputError("finite field characteristic must be a prime below 2^31");
  gf::trim(modulus);
  if (modulus.size() < 2 || modulus.back() != 1) throw InputError("finite field modulus must be monic of degree >= 1");
  for (auto c : modulus)
    if (c >= p) throw InputError("finite field modulus coefficient out of range");
  std::shared_ptr<FiniteField> f(new FiniteField(p, std::move(modulus), std::move(var)));
  if (f->d_ == 1) {
    f->gen_ = (p - f->modulus_[0]) % p;
    return f;
  }
  if (f->q_ > kMaxOrder) throw InputError("finite field GF(" + std::to_string(p) + "^" + std::to_string(f->d_) + ") is too large");
  if (!gf::is_irreducible(*prime_field(p), f->modulus_)) throw InputError("finite field modulus is reducible mod " + std::to_string(p));
  f->gen_ = p;
  f->build_tables();
  return f;
}

std::string FiniteField::describe() const {
  if (d_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(d_) + ")";
}

std::uint32_t FiniteField::add_slow(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t r = 0, scale = 1;
  for (unsigned i = 0; i < d_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

std::uint32_t FiniteField::neg_slow(std::uint32_t a) const {
  std::uint32_t r = 0, scale = 1;
  for (unsigned i = 0; i < d_; ++i) {
    std::uint32_t c = a % p_;
    r += (c == 0 ? 0 : p_ - c) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

std::uint32_t FiniteField::mul_slow(std::uint32_t a, std::uint32_t b) const {
  auto ca = coords(a), cb = coords(b);
  std::vector<std::uint64_t> prod(2 * d_ - 1, 0);
  for (unsigned i = 0; i < d_; ++i)
    for (unsigned j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_;
  for (unsigned k = 2 * d_ - 1; k-- > d_;) {
    std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (unsigned j = 0; j <= d_; ++j) {
      std::uint64_t sub = (c * modulus_[j]) % p_;
      prod[k - d_ + j] = (prod[k - d_ + j] + p_ - sub) % p_;
    }
  }
  std::vector<std::uint32_t> c(d_);
  for (unsigned i = 0; i < d_; ++i) c[i] = static_cast<std::uint32_t>(prod[i]);
  return from_coords(c);
}

void FiniteField::build_tables() {
  const std::uint64_t n = q_ - 1;
  auto primes = prime_divisors(n);
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };
  std::uint32_t prim = 0;
  for (std::uint32_t c = 1; c < q_ && prim == 0; ++c) {
    bool ok = true;
    for (auto l : primes)
      if (slow_pow(c, n / l) == 1) {
        ok = false;
        break;
      }
    if (ok) prim = c;
  }
  if (prim == 0) throw InternalError("no primitive element found");
  exp_.assign(2 * n, 0);
  log_.assign(q_, 0);
  std::uint32_t x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_[i] = x;
    exp_[i + n] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_slow(x, prim);
  }
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (a == 0) throw MathError("inverse of zero in " + describe());
  if (d_ == 1) {
    // extended Euclid on (a, p)
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t qq = r / nr;
      std::int64_t tmp = t - qq * nt;
      t = nt;
      nt = tmp;
      tmp = r - qq * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<std::uint32_t>(t);
  }
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint32_t FiniteField::from_integer(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t FiniteField::from_integer(const mpz_class& v) const {
  mpz_class r = v % p_;
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::vector<std::uint32_t> FiniteField::coords(std::uint32_t a) const {
  std::vector<std::uint32_t> c(d_);
  for (unsigned i = 0; i < d_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

std::uint32_t FiniteField::from_coords(const std::vector<std::uint32_t>& c) const {
  std::uint32_t r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * p_ + c[i] % p_;
  return r;
}

std::string FiniteField::element_str(std::uint32_t a) const {
  if (d_ == 1) return std::to_string(a);
  auto c = coords(a);
  std::vector<std::string> parts(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i]) parts[i] = std::to_string(c[i]);
  return detail::format_polynomial(parts, var_);
}

FFElement FiniteField::elem(std::uint32_t v) const { return {this, v}; }
FFElement FiniteField::zero() const { return {this, 0}; }
FFElement FiniteField::one() const { return {this, 1}; }
FFElement FiniteField::from_int(long v) const { return {this, from_integer(static_cast<long long>(v))}; }
FFElement FiniteField::from_mpz(const mpz_class& v) const { return {this, from_integer(v)}; }

std::optional<FFElement> FiniteField::symbol(const std::string& name) const {
  if (d_ > 1 && name == var_) return FFElement{this, gen_};
  return std::nullopt;
}

namespace gf {

void trim(GFPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const GFPoly& a) { return static_cast<int>(a.size()) - 1; }

GFPoly add(const FiniteField& F, const GFPoly& a, const GFPoly& b) {
  GFPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

GFPoly sub(const FiniteField& F, const GFPoly& a, const GFPoly& b) {
  GFPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

GFPoly mul(const FiniteField& F, const GFPoly& a, const GFPoly& b) {
  if (a.empty() || b.empty()) return {};
  GFPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

GFPoly scale(const FiniteField& F, const GFPoly& a, std::uint32_t s) {
  GFPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

std::pair<GFPoly, GFPoly> divmod(const FiniteField& F, const GFPoly& a, const GFPoly& b) {
  if (b.empty()) throw MathError("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  GFPoly rem = a;
  GFPoly quo(a.size() - b.size() + 1, 0);
  const std::uint32_t li = F.inv(b.back());
  const std::size_t db = b.size() - 1;
  for (std::size_t k = a.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    std::uint32_t q = F.mul(rem[k], li);
    quo[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] = F.sub(rem[k - db + j], F.mul(q, b[j]));
  }
  rem.resize(db);
  trim(rem);
  trim(quo);
  return {quo, rem};
}

GFPoly mod(const FiniteField& F, const GFPoly& a, const GFPoly& b) { return divmod(F, a, b).second; }

GFPoly monic(const FiniteField& F, const GFPoly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

GFPoly gcd(const FiniteField& F, GFPoly a, GFPoly b) {
  while (!b.empty()) {
    GFPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

GFPoly derivative(const FiniteField& F, const GFPoly& a) {
  if (a.size() <= 1) return {};
  GFPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], F.from_integer(static_cast<long long>(i)));
  trim(r);
  return r;
}

GFPoly powmod(const FiniteField& F, const GFPoly& base, const mpz_class& e, const GFPoly& m) {
  GFPoly result{1};
  result = mod(F, result, m);
  GFPoly b = mod(F, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(F, mul(F, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(F, mul(F, result, b), m);
  }
  return result;
}

std::uint32_t eval(const FiniteField& F, const GFPoly& a, std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t k = a.size(); k-- > 0;) acc = F.add(F.mul(acc, x), a[k]);
  return acc;
}

std::string str(const FiniteField& F, const GFPoly& a, const std::string& var) {
  std::vector<std::string> parts(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) parts[i] = F.element_str(a[i]);
  return detail::format_polynomial(parts, var);
}

bool less(const GFPoly& a, const GFPoly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

const GFPoly kX{0, 1};

mpz_class field_order(const FiniteField& F) { return mpz_class(static_cast<unsigned long>(F.order())); }

// x^(q^k) mod f given h = x^(q^(k-1)) mod f.
GFPoly frobenius(const FiniteField& F, const GFPoly& h, const GFPoly& f) { return powmod(F, h, field_order(F), f); }

GFPoly pth_root(const FiniteField& F, const GFPoly& a) {
  const std::uint32_t p = F.p();
  // a^(1/p) = a^(q/p) in GF(q)
  const std::uint64_t e = F.order() / p;
  GFPoly r((a.size() - 1) / p + 1, 0);
  for (std::size_t i = 0; i < a.size(); i += p) r[i / p] = F.pow(a[i], e);
  trim(r);
  return r;
}

void squarefree_factorization(const FiniteField& F, const GFPoly& f, unsigned mult,
                              std::vector<std::pair<GFPoly, unsigned>>& out) {
  if (degree(f) < 1) return;
  GFPoly df = derivative(F, f);
  if (df.empty()) {
    squarefree_factorization(F, pth_root(F, f), mult * F.p(), out);
    return;
  }
  GFPoly c = gcd(F, f, df);
  GFPoly w = divmod(F, f, c).first;
  unsigned i = 1;
  while (degree(w) > 0) {
    GFPoly y = gcd(F, w, c);
    GFPoly z = divmod(F, w, y).first;
    if (degree(z) > 0) out.emplace_back(monic(F, z), i * mult);
    ++i;
    w = y;
    c = divmod(F, c, y).first;
  }
  if (degree(c) > 0) squarefree_factorization(F, pth_root(F, monic(F, c)), mult * F.p(), out);
}

std::vector<std::pair<GFPoly, unsigned>> distinct_degree(const FiniteField& F, GFPoly g) {
  std::vector<std::pair<GFPoly, unsigned>> out;
  GFPoly h = kX;
  unsigned i = 1;
  while (degree(g) >= 2 * static_cast<int>(i)) {
    h = frobenius(F, h, g);
    GFPoly d = gcd(F, g, sub(F, h, kX));
    if (degree(d) > 0) {
      out.emplace_back(d, i);
      g = divmod(F, g, d).first;
      h = mod(F, h, g);
    }
    ++i;
  }
  if (degree(g) > 0) out.emplace_back(monic(F, g), static_cast<unsigned>(degree(g)));
  return out;
}

GFPoly random_poly(const FiniteField& F, int deg_bound, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, F.order() - 1);
  GFPoly r(static_cast<std::size_t>(deg_bound));
  for (auto& c : r) c = static_cast<std::uint32_t>(dist(rng));
  trim(r);
  return r;
}

void equal_degree(const FiniteField& F, const GFPoly& g, unsigned d, std::mt19937_64& rng, std::vector<GFPoly>& out) {
  if (degree(g) == static_cast<int>(d)) {
    out.push_back(monic(F, g));
    return;
  }
  const mpz_class q = field_order(F);
  for (;;) {
    GFPoly a = random_poly(F, degree(g), rng);
    if (degree(a) < 1) continue;
    GFPoly b;
    if (F.p() == 2) {
      // trace map: sum_{i < k*d} a^(2^i), q = 2^k
      const unsigned k = F.degree();
      GFPoly t = a, acc = a;
      for (unsigned i = 1; i < k * d; ++i) {
        t = mod(F, mul(F, t, t), g);
        acc = add(F, acc, t);
      }
      b = acc;
    } else {
      mpz_class e;
      mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), d);
      e = (e - 1) / 2;
      b = sub(F, powmod(F, a, e, g), GFPoly{1});
    }
    GFPoly c = gcd(F, g, b);
    if (degree(c) > 0 && degree(c) < degree(g)) {
      equal_degree(F, c, d, rng, out);
      equal_degree(F, divmod(F, g, c).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const FiniteField& F, const GFPoly& f0) {
  const int n = degree(f0);
  if (n < 1) return false;
  if (n == 1) return true;
  GFPoly f = monic(F, f0);
  std::vector<GFPoly> powers(static_cast<std::size_t>(n) + 1);
  powers[0] = kX;
  for (int i = 1; i <= n; ++i) powers[i] = frobenius(F, powers[i - 1], f);
  if (sub(F, powers[n], mod(F, kX, f)).size() != 0) return false;
  for (auto l : prime_divisors(static_cast<std::uint64_t>(n))) {
    GFPoly g = gcd(F, f, sub(F, powers[n / l], kX));
    if (degree(g) != 0) return false;
  }
  return true;
}

std::vector<std::pair<GFPoly, unsigned>> factor(const FiniteField& F, const GFPoly& f, std::mt19937_64& rng) {
  GFPoly g = f;
  trim(g);
  if (g.empty()) throw MathError("factoring the zero polynomial");
  g = monic(F, g);
  std::vector<std::pair<GFPoly, unsigned>> sqf, out;
  squarefree_factorization(F, g, 1, sqf);
  for (auto& [part, mult] : sqf) {
    for (auto& [block, d] : distinct_degree(F, part)) {
      std::vector<GFPoly> pieces;
      equal_degree(F, block, d, rng, pieces);
      for (auto& piece : pieces) out.emplace_back(piece, mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return less(a.first, b.first);
    return a.second < b.second;
  });
  // merge equal factors arising from different squarefree layers
  std::vector<std::pair<GFPoly, unsigned>> merged;
  for (auto& fm : out) {
    if (!merged.empty() && merged.back().first == fm.first)
      merged.back().second += fm.second;
    else
      merged.push_back(fm);
  }
  return merged;
}

std::vector<std::uint32_t> roots(const FiniteField& F, const GFPoly& f0, std::mt19937_64& rng) {
  GFPoly f = f0;
  trim(f);
  if (f.empty()) throw MathError("roots of the zero polynomial");
  if (degree(f) == 0) return {};
  f = monic(F, f);
  GFPoly xq = powmod(F, kX, field_order(F), f);
  GFPoly g = gcd(F, f, sub(F, xq, kX));
  std::vector<std::uint32_t> out;
  if (degree(g) < 1) return out;
  std::vector<GFPoly> lin;
  equal_degree(F, g, 1, rng, lin);
  for (auto& l : lin) out.push_back(F.neg(l[0]));
  std::sort(out.begin(), out.end());
  return out;
}

GFPoly random_irreducible(const FiniteField& F, unsigned deg, std::mt19937_64& rng) {
  if (deg == 1) return kX;
  std::uniform_int_distribution<std::uint64_t> dist(0, F.order() - 1);
  for (;;) {
    GFPoly r(deg + 1);
    for (unsigned i = 0; i < deg; ++i) r[i] = static_cast<std::uint32_t>(dist(rng));
    r[deg] = 1;
    if (is_irreducible(F, r)) return r;
  }
}

}  // namespace gf

std::uint32_t FieldEmbedding::operator()(std::uint32_t a) const {
  if (from == to) return a;
  auto c = from->coords(a);
  std::uint32_t acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = to->add(to->mul(acc, gen_image), c[k]);
  return acc;
}

GFPoly FieldEmbedding::map(const GFPoly& f) const {
  GFPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = (*this)(f[i]);
  gf::trim(r);
  return r;
}

FieldExtension extend(const FieldPtrFF& base, const GFPoly& g0, std::mt19937_64& rng) {
  GFPoly g = gf::monic(*base, g0);
  const int m = gf::degree(g);
  if (m < 1) throw MathError("cannot adjoin a root of a constant polynomial");
  if (m == 1) return {base, FieldEmbedding::identity(base), base->neg(g[0])};
  if (base->degree() == 1) {
    auto L = FiniteField::create(base->p(), g);
    return {L, FieldEmbedding{base, L, 0}, L->generator()};
  }
  auto prime = FiniteField::prime_field(base->p());
  GFPoly h = gf::random_irreducible(*prime, base->degree() * static_cast<unsigned>(m), rng);
  auto L = FiniteField::create(base->p(), h);
  auto base_gens = gf::roots(*L, base->modulus(), rng);
  if (base_gens.empty()) throw InternalError("base field does not embed in its extension");
  FieldEmbedding emb{base, L, base_gens.front()};
  auto rts = gf::roots(*L, emb.map(g), rng);
  if (rts.empty()) throw InternalError("adjoined polynomial has no root in the extension");
  return {L, emb, rts.front()};
}

FieldExtension extend_by_degree(const FieldPtrFF& base, unsigned m, std::mt19937_64& rng) {
  if (m <= 1) return {base, FieldEmbedding::identity(base), base->generator()};
  return extend(base, gf::random_irreducible(*base, m, rng), rng);
}

}  // namespace tits
