#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tits/number_theory.hpp"

using namespace tits;
using support::field_ctx;

namespace {

// Schoolbook arithmetic in GF(p)[t]/(m), for checking the table-driven field.
std::vector<long> naive_mul(const std::vector<long>& a, const std::vector<long>& b, const std::vector<long>& m, long p) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  const std::size_t d = m.size() - 1;
  for (std::size_t k = r.size(); k-- > d;) {
    const long c = r[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) r[k - d + i] = ((r[k - d + i] - c * m[i]) % p + p) % p;
  }
  r.resize(d);
  return r;
}

template <class E>
E random_element(const typename E::Field& F, std::mt19937_64& rng, const std::vector<E>& atoms, int ops) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(atoms.size()) - 1), op(0, 3), c(-3, 3);
  E x = F.from_int(c(rng));
  for (int i = 0; i < ops; ++i) {
    const E& a = atoms[pick(rng)];
    switch (op(rng)) {
      case 0:
        x = x + a;
        break;
      case 1:
        x = x * a;
        break;
      case 2:
        x = x - F.from_int(c(rng));
        break;
      default:
        if (!a.is_zero()) x = x / a;
    }
  }
  return x;
}

template <class E>
void check_roundtrip(const FieldContext<E>& ctx, const std::vector<std::string>& atom_strs, int trials) {
  std::mt19937_64 rng(42);
  std::vector<E> atoms;
  for (const auto& s : atom_strs) atoms.push_back(parse_element<E>(ctx.F(), s));
  for (int t = 0; t < trials; ++t) {
    E x = random_element(ctx.F(), rng, atoms, 5);
    const std::string s = x.str();
    E y = parse_element<E>(ctx.F(), s);
    CHECK_MESSAGE(y == x, s);
    CHECK(y.str() == s);
    if (!x.is_zero()) CHECK((x * x.inv()).is_one());
  }
}

}  // namespace

TEST_CASE("rational arithmetic and parsing") {
  const auto& Q = RationalField::instance();
  CHECK(parse_element<Rational>(Q, "1/2 + 1/3").str() == "5/6");
  CHECK(parse_element<Rational>(Q, "-(2^-2)*8").str() == "-2");
  CHECK_THROWS_WITH_AS(parse_element<Rational>(Q, "1/0"), doctest::Contains("division by zero"), InputError);
  CHECK_THROWS_AS(parse_element<Rational>(Q, "1 +"), InputError);
  CHECK_THROWS_AS(parse_element<Rational>(Q, "x"), InputError);
}

TEST_CASE("finite field arithmetic matches schoolbook polynomial arithmetic") {
  const std::vector<long> m{2, 2, 0, 1};  // t^3 + 2t + 2 over GF(3)
  auto F = FiniteField::create(3, {2, 2, 0, 1});
  REQUIRE(F->order() == 27);
  for (std::uint32_t a = 0; a < 27; ++a)
    for (std::uint32_t b = 0; b < 27; ++b) {
      auto ca = F->coords(a), cb = F->coords(b);
      std::vector<long> la(ca.begin(), ca.end()), lb(cb.begin(), cb.end());
      auto expect = naive_mul(la, lb, m, 3);
      auto got = F->coords(F->mul(a, b));
      std::vector<long> lg(got.begin(), got.end());
      lg.resize(3, 0);
      CHECK(lg == expect);
    }
  for (std::uint32_t a = 1; a < 27; ++a) {
    CHECK(F->mul(a, F->inv(a)) == 1);
    CHECK(F->pow(a, 26) == 1);
  }
}

TEST_CASE("finite field factorization") {
  std::mt19937_64 rng(7);
  auto F = FiniteField::prime_field(7);
  std::uniform_int_distribution<std::uint32_t> c(0, 6);
  for (int trial = 0; trial < 40; ++trial) {
    GFPoly f;
    const int deg = 2 + trial % 6;
    for (int i = 0; i < deg; ++i) f.push_back(c(rng));
    f.push_back(1);
    auto facs = gf::factor(*F, f, rng);
    GFPoly prod{1};
    for (const auto& [g, e] : facs) {
      for (unsigned k = 0; k < e; ++k) prod = gf::mul(*F, prod, g);
      if (gf::degree(g) <= 3) {
        bool root = false;
        for (std::uint32_t x = 0; x < 7; ++x) root = root || gf::eval(*F, g, x) == 0;
        CHECK((gf::degree(g) == 1 || !root));
      }
      CHECK(gf::is_irreducible(*F, g));
    }
    CHECK(prod == f);
    for (std::size_t i = 1; i < facs.size(); ++i) {
      const auto &a = facs[i - 1].first, &b = facs[i].first;
      CHECK((gf::degree(a) < gf::degree(b) || (gf::degree(a) == gf::degree(b) && !gf::less(b, a))));
    }
  }
}

TEST_CASE("integer polynomial utilities") {
  auto Z = [](std::initializer_list<long> c) {
    IntPoly p;
    for (long x : c) p.emplace_back(x);
    return p;
  };
  // b^2 - 4ac for quadratics
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int t = 0; t < 30; ++t) {
    long b = d(rng), c = d(rng);
    CHECK(discriminant(Z({c, b, 1})) == b * b - 4 * c);
  }
  CHECK(is_irreducible_over_q(Z({-2, 0, 0, 0, 1})));
  CHECK_FALSE(is_irreducible_over_q(Z({4, 0, 0, 0, 1})));  // (x^2+2x+2)(x^2-2x+2)
  CHECK(is_irreducible_over_q(Z({1, 0, 0, 0, 1})));
  CHECK_FALSE(is_irreducible_over_q(Z({-1, 0, 1})));
  // products of two random monic factors are reducible
  for (int t = 0; t < 20; ++t) {
    IntPoly a = Z({d(rng), d(rng), 1}), b = Z({d(rng), 1});
    IntPoly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
    CHECK_FALSE(is_irreducible_over_q(prod));
  }
  for (unsigned n = 1; n <= 30; ++n) {
    IntPoly phi = cyclotomic_polynomial(n);
    unsigned tot = 0;
    for (unsigned k = 1; k <= n; ++k) tot += std::gcd(k, n) == 1;
    CHECK(phi.size() - 1 == tot);
    CHECK(cyclotomic_index(phi) == n);
    // phi divides x^n - 1: check all n-th roots mod a prime p = 1 mod n
    std::uint64_t p = n + 1;
    while (!is_prime(p) || (p - 1) % n != 0) ++p;
    auto Fp = FiniteField::prime_field(static_cast<std::uint32_t>(p));
    auto fr = reduce_mod_p(phi, static_cast<std::uint32_t>(p));
    unsigned roots = 0;
    for (std::uint32_t x = 1; x < p; ++x)
      if (gf::eval(*Fp, fr, x) == 0) {
        ++roots;
        CHECK(Fp->pow(x, n) == 1);
      }
    CHECK(roots == tot);
  }
  CHECK_FALSE(cyclotomic_index(Z({1, 0, 1, 1})).has_value());
  CHECK(prime_divisors(360) == std::vector<std::uint64_t>{2, 3, 5});
}

TEST_CASE("parse and print round-trip in every supported field") {
  check_roundtrip(field_ctx<Rational>(R"({"type":"rationals"})"), {"2", "1/3", "-5"}, 50);
  check_roundtrip(field_ctx<NumberFieldElement>(R"({"type":"number_field","minpoly":[-2,0,0,1]})"),
                  {"a", "a^2 + 1/2", "3"}, 50);
  check_roundtrip(field_ctx<QX>(R"({"type":"function_field","base":{"type":"rationals"}})"),
                  {"x", "x + 1", "1/2", "x^2 - 3"}, 50);
  check_roundtrip(
      field_ctx<NFX>(R"({"type":"function_field","base":{"type":"number_field","minpoly":[1,0,1]},"var":"s"})"),
      {"a*s", "s + a", "2"}, 30);
  check_roundtrip(
      field_ctx<FFX>(R"({"type":"function_field","base":{"type":"finite_field","p":5,"minpoly":[2,0,1]}})"),
      {"x", "z*x + 1", "z"}, 50);
  check_roundtrip(field_ctx<AQX>(R"({"type":"algebraic_function_field",
      "base":{"type":"function_field","base":{"type":"rationals"}},"minpoly":["-x","0","1"]})"),
                  {"b", "x", "b + x", "1/2"}, 30);
  check_roundtrip(field_ctx<ANFX>(R"({"type":"algebraic_function_field",
      "base":{"type":"function_field","base":{"type":"number_field","minpoly":[1,0,1]}},"minpoly":["-x - a","0","1"]})"),
                  {"b", "x", "a*b"}, 20);
  check_roundtrip(field_ctx<AFFX>(R"({"type":"algebraic_function_field",
      "base":{"type":"function_field","base":{"type":"finite_field","p":19}},"minpoly":["-x","0","1"]})"),
                  {"b", "x + 1", "3"}, 30);
}

TEST_CASE("rational functions are reduced with monic denominators") {
  auto ctx = field_ctx<QX>(R"({"type":"function_field","base":{"type":"rationals"}})");
  CHECK(parse_element<QX>(ctx.F(), "(x^2-1)/(x-1)").str() == "x + 1");
  auto e = parse_element<QX>(ctx.F(), "(x^2+1)/(2*x-2)");
  CHECK(e.den().lead().is_one());
  CHECK(e.str() == "(1/2*x^2 + 1/2)/(x - 1)");
}

TEST_CASE("field descriptor validation") {
  using nlohmann::json;
  CHECK_THROWS_AS(build_field(descriptor_from_json(json::parse(R"({"type":"finite_field","p":7})"))), InputError);
  CHECK_THROWS_AS(build_field(descriptor_from_json(json::parse(R"({"type":"number_field","minpoly":[-1,0,1]})"))),
                  InputError);
  CHECK_THROWS_AS(descriptor_from_json(json::parse(R"({"type":"function_field","vars":["x","y"],"base":{"type":"rationals"}})")),
                  InputError);
  CHECK_THROWS_AS(build_field(descriptor_from_json(json::parse(
                      R"({"type":"function_field","base":{"type":"finite_field","p":9}})"))),
                  InputError);
  // squarefree but reducible: zero divisors surface as arithmetic errors
  auto ctx = field_ctx<AQX>(R"({"type":"algebraic_function_field",
      "base":{"type":"function_field","base":{"type":"rationals"}},"minpoly":["-x^2","0","1"]})");
  CHECK_THROWS_AS(parse_element<AQX>(ctx.F(), "b - x").inv(), MathError);
  auto d = descriptor_from_json(json::parse(
      R"({"type":"algebraic_function_field","base":{"type":"function_field","base":{"type":"rationals"}},"minpoly":["-x","0","1"]})"));
  CHECK(descriptor_to_json(descriptor_from_json(descriptor_to_json(d))) == descriptor_to_json(d));
}
