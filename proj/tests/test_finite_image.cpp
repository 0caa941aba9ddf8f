#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tits/kernel.hpp"

using namespace tits;
using support::qmat;

namespace {

using Codes = std::vector<std::uint32_t>;

FFMatrix ffmat(const FiniteField* F, const std::vector<std::vector<long>>& rows) {
  FFMatrix m(F, static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = F->from_integer(rows[i][j]);
  return m;
}

// Plain BFS over std::set, right multiplication by generators and inverses.
std::set<Codes> closure_oracle(const std::vector<FFMatrix>& gens) {
  const FFMatrix I = FFMatrix::identity(gens[0].field(), gens[0].n());
  std::vector<FFMatrix> all = gens;
  for (const auto& g : gens) all.push_back(g.inverse());
  std::set<Codes> seen{I.codes()};
  std::vector<FFMatrix> frontier{I};
  while (!frontier.empty()) {
    std::vector<FFMatrix> next;
    for (const auto& x : frontier)
      for (const auto& g : all) {
        FFMatrix y = x * g;
        if (seen.insert(y.codes()).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

std::set<Codes> as_set(const EnumeratedGroup& G, const std::vector<std::uint32_t>& idx) {
  std::set<Codes> out;
  for (auto i : idx) out.insert(G.element(i).codes());
  return out;
}

// Derived series using commutators of all pairs of elements.
std::vector<std::size_t> derived_oracle(const std::vector<FFMatrix>& gens) {
  std::vector<std::size_t> orders;
  std::set<Codes> H = closure_oracle(gens);
  const FiniteField* F = gens[0].field();
  const int n = gens[0].n();
  while (true) {
    orders.push_back(H.size());
    std::vector<FFMatrix> els;
    for (const auto& c : H) els.emplace_back(F, n, c);
    std::set<Codes> comm;
    std::vector<FFMatrix> cg;
    for (const auto& a : els)
      for (const auto& b : els) {
        FFMatrix c = a.inverse() * b.inverse() * a * b;
        if (comm.insert(c.codes()).second) cg.push_back(c);
      }
    std::set<Codes> D = closure_oracle(cg);
    if (D.size() == H.size()) break;
    H = std::move(D);
  }
  return orders;
}

struct Example {
  std::string name;
  std::vector<FFMatrix> gens;
  std::uint32_t order;
  bool solvable;
};

std::vector<Example> examples() {
  static auto F3 = FiniteField::prime_field(3), F5 = FiniteField::prime_field(5), F7 = FiniteField::prime_field(7);
  static auto F4 = FiniteField::create(2, {1, 1, 1});
  std::vector<Example> ex;
  ex.push_back({"cyclic 4", {ffmat(F5.get(), {{0, 1}, {-1, 0}})}, 4, true});
  ex.push_back({"SL(2,3)", {ffmat(F3.get(), {{1, 1}, {0, 1}}), ffmat(F3.get(), {{1, 0}, {1, 1}})}, 24, true});
  ex.push_back({"SL(2,5)", {ffmat(F5.get(), {{1, 1}, {0, 1}}), ffmat(F5.get(), {{1, 0}, {1, 1}})}, 120, false});
  ex.push_back({"SL(2,7)", {ffmat(F7.get(), {{1, 1}, {0, 1}}), ffmat(F7.get(), {{1, 0}, {1, 1}})}, 336, false});
  FFMatrix u(F4.get(), 2, {1, 1, 0, 1}), l(F4.get(), 2, {1, 0, 1, 1}), d(F4.get(), 2, {2, 0, 0, 3});
  ex.push_back({"SL(2,4)", {u, l, d}, 60, false});
  ex.push_back({"S3", {ffmat(F5.get(), {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), ffmat(F5.get(), {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}})},
                6, true});
  ex.push_back({"trivial", {ffmat(F7.get(), {{1, 0}, {0, 1}})}, 1, true});
  ex.push_back({"upper unitriangular", {ffmat(F5.get(), {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                                        ffmat(F5.get(), {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}})},
                125, true});
  return ex;
}

}  // namespace

TEST_CASE("enumeration agrees with a set-based closure") {
  for (const auto& ex : examples()) {
    CAPTURE(ex.name);
    auto G = EnumeratedGroup::enumerate(ex.gens);
    CHECK(G.order() == ex.order);
    std::vector<std::uint32_t> all(G.order());
    for (std::uint32_t i = 0; i < G.order(); ++i) all[i] = i;
    CHECK(as_set(G, all) == closure_oracle(ex.gens));
    CHECK(G.element(0).is_identity());
    for (std::uint32_t u = 0; u < G.order(); ++u) {
      CHECK(G.index_of(G.element(u)) == u);
      CHECK(G.walk(G.word(u)) == u);
      CHECK(static_cast<int>(G.word(u).size()) == G.depth(u));
      CHECK(G.layer_begin(G.depth(u)) <= u);
      CHECK(u < G.layer_end(G.depth(u)));
    }
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint32_t> pick(0, G.order() - 1);
    for (int t = 0; t < 50; ++t) {
      auto a = pick(rng), b = pick(rng);
      CHECK(G.element(G.multiply(a, b)) == G.element(a) * G.element(b));
      CHECK(G.element(G.inverse(a)) == G.element(a).inverse());
    }
  }
}

TEST_CASE("SL(2,q) has order q(q^2-1)") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    auto F = FiniteField::prime_field(p);
    auto G = EnumeratedGroup::enumerate({ffmat(F.get(), {{1, 1}, {0, 1}}), ffmat(F.get(), {{1, 0}, {1, 1}})});
    CHECK(G.order() == p * (p * p - 1));
  }
}

TEST_CASE("enumeration cap") {
  auto F = FiniteField::prime_field(5);
  auto gens = std::vector<FFMatrix>{ffmat(F.get(), {{1, 1}, {0, 1}}), ffmat(F.get(), {{1, 0}, {1, 1}})};
  try {
    EnumeratedGroup::enumerate(gens, 10);
    FAIL("expected ImageTooLarge");
  } catch (const ImageTooLarge& e) {
    CHECK(e.cap == 10);
    CHECK(e.partial_count == 10);
  }
  CHECK(EnumeratedGroup::enumerate(gens, 120).order() == 120);
}

TEST_CASE("relators from the Cayley graph") {
  for (const auto& ex : examples()) {
    CAPTURE(ex.name);
    auto G = EnumeratedGroup::enumerate(ex.gens);
    auto P = cayley_presentation(G);
    auto rels = P.relators();
    CHECK(rels.size() == P.relator_count());
    CHECK(P.relator_count() == static_cast<std::uint64_t>(G.order()) * G.rank() - (G.order() - 1));
    std::set<Word> distinct(rels.begin(), rels.end());
    CHECK(distinct.size() == rels.size());
    for (const auto& w : rels) {
      CHECK(free_reduce(w) == w);
      CHECK(G.walk(w) == 0);
      // the relator also holds when multiplied out as matrices
      FFMatrix x = FFMatrix::identity(G.field(), G.n());
      for (auto l : w) x = x * (l > 0 ? ex.gens[l - 1] : ex.gens[-l - 1].inverse());
      CHECK(x.is_identity());
    }
  }
  auto F5 = FiniteField::prime_field(5);
  auto C4 = EnumeratedGroup::enumerate({ffmat(F5.get(), {{0, 1}, {-1, 0}})});
  auto rels = Presentation(C4).relators();
  REQUIRE(rels.size() == 1);
  CHECK(rels[0] == Word{1, 1, 1, 1});
  auto T = EnumeratedGroup::enumerate({FFMatrix::identity(F5.get(), 2)});
  CHECK(Presentation(T).relators() == std::vector<Word>{Word{1}});
  CHECK(free_reduce({1, 2, -2, -1, 3}) == Word{3});
  CHECK(inverse_word({1, -2, 3}) == Word{-3, 2, -1});
}

TEST_CASE("solvability and the solvable radical") {
  for (const auto& ex : examples()) {
    CAPTURE(ex.name);
    auto G = EnumeratedGroup::enumerate(ex.gens);
    auto orders = derived_series_orders(G, generator_indices(G));
    auto expect = derived_oracle(ex.gens);
    CHECK(std::vector<std::size_t>(orders.begin(), orders.end()) == expect);
    CHECK(is_solvable_finite(G) == ex.solvable);
    CHECK(is_solvable_finite(G) == (expect.back() == 1));
  }
  auto ex = examples();
  auto index = [&](const std::string& name) {
    for (const auto& e : ex)
      if (e.name == name) return solvable_radical_index(EnumeratedGroup::enumerate(e.gens));
    return std::uint64_t{0};
  };
  CHECK(index("SL(2,5)") == 60);
  CHECK(index("SL(2,4)") == 60);
  CHECK(index("SL(2,7)") == 168);
  CHECK(index("S3") == 1);
  CHECK(index("cyclic 4") == 1);
}

TEST_CASE("normal closure is the smallest normal subgroup containing the element") {
  for (const auto& ex : examples()) {
    auto G = EnumeratedGroup::enumerate(ex.gens);
    const auto gens = generator_indices(G);
    for (std::uint32_t x = 0; x < std::min<std::uint32_t>(G.order(), 30); ++x) {
      auto N = normal_closure(G, {x}, gens);
      // oracle: closure of all conjugates of x
      std::vector<FFMatrix> conj;
      for (std::uint32_t g = 0; g < G.order(); ++g)
        conj.push_back(G.element(g).inverse() * G.element(x) * G.element(g));
      CHECK(as_set(G, N) == closure_oracle(conj));
    }
  }
}

TEST_CASE("kernel generators for cyclic examples") {
  std::vector<Matrix<Rational>> S{qmat({{"1", "1"}, {"0", "1"}})};
  WHomOptions opt;
  opt.prime = 5;
  auto psi = build_whom(S, opt);
  auto G = EnumeratedGroup::enumerate({apply_whom(psi, S[0])});
  CHECK(G.order() == 5);
  auto K = KernelStream<Rational>(G, S, psi).all();
  REQUIRE(K.size() == 1);
  CHECK(K[0].str() == "[[1, 5], [0, 1]]");

  std::vector<Matrix<Rational>> D{qmat({{"2", "0"}, {"0", "1/2"}})};
  auto psi_d = build_whom(D, opt);
  auto GD = EnumeratedGroup::enumerate({apply_whom(psi_d, D[0])});
  CHECK(GD.order() == 4);
  auto KD = KernelStream<Rational>(GD, D, psi_d).all();
  REQUIRE(KD.size() == 1);
  CHECK(KD[0].str() == "[[16, 0], [0, 1/16]]");
}

TEST_CASE("streamed kernel agrees with the word-by-word reference") {
  auto check = [](const auto& S, const WHomOptions& opt) {
    using E = typename std::decay_t<decltype(S)>::value_type::Element;
    auto psi = build_whom(S, opt);
    std::vector<FFMatrix> img;
    for (const auto& s : S) img.push_back(apply_whom(psi, s));
    auto G = EnumeratedGroup::enumerate(img);
    auto ref = reference_normal_generators(G, S);
    std::set<std::string> ref_keys;
    for (const auto& k : ref) ref_keys.insert(k.str());
    for (bool parallel : {false, true}) {
      KernelStream<E> ks(G, S, psi, parallel);
      std::set<std::string> keys;
      for (const auto& k : ks.all()) {
        CHECK(apply_whom(psi, k).is_identity());
        CHECK(keys.insert(k.str()).second);
      }
      CHECK(keys == ref_keys);
      CHECK(ks.stats().relators == Presentation(G).relator_count());
      CHECK(ks.stats().emitted == ref.size());
    }
  };
  WHomOptions none;
  check(std::vector<Matrix<Rational>>{qmat({{"1", "2"}, {"0", "1"}}), qmat({{"1", "0"}, {"2", "1"}})}, none);
  check(std::vector<Matrix<Rational>>{qmat({{"0", "-1"}, {"1", "0"}}), qmat({{"1", "1"}, {"0", "1"}})}, none);
  check(std::vector<Matrix<Rational>>{qmat({{"1/2", "0"}, {"0", "1"}}), qmat({{"1", "1"}, {"0", "1"}})}, none);
  auto ctx = support::field_ctx<QX>(R"({"type":"function_field","base":{"type":"rationals"}})");
  check(std::vector<Matrix<QX>>{support::mat<QX>(ctx.F(), {{"x", "0"}, {"0", "1"}}),
                                support::mat<QX>(ctx.F(), {{"0", "1"}, {"1", "0"}})},
        none);
  auto ctx19 = support::field_ctx<FFX>(R"({"type":"function_field","base":{"type":"finite_field","p":7}})");
  check(std::vector<Matrix<FFX>>{support::mat<FFX>(ctx19.F(), {{"x", "1"}, {"0", "1"}})}, none);
}
