#include <random>

#include "doctest.h"
#include "support.hpp"
#include "tits/linalg.hpp"

using namespace tits;
using support::q;
using support::qmat;

namespace {

int rank_oracle(std::vector<std::vector<mpq_class>> rows) {
  int r = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c] != 0) piv = i;
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c] / rows[r][c];
      for (int j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<mpq_class> as_mpq(const std::vector<Rational>& v) {
  std::vector<mpq_class> out;
  for (const auto& x : v) out.push_back(x.value());
  return out;
}

Matrix<Rational> random_triangularizable(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> eig(-2, 3), off(-2, 2), coin(0, 2);
  auto T = Matrix<Rational>::identity(&RationalField::instance(), n);
  for (int i = 0; i < n; ++i) {
    int e = eig(rng);
    if (e == 0) e = 1;
    T.at(i, i) = q(e);
    // repeat eigenvalues often so that nontrivial unipotent parts appear
    if (i > 0 && coin(rng) == 0) T.at(i, i) = T(i - 1, i - 1);
    for (int j = i + 1; j < n; ++j) T.at(i, j) = q(off(rng));
  }
  auto P = support::random_unimodular(rng, n, 8);
  return P * T * P.inverse();
}

}  // namespace

TEST_CASE("inverse and singular matrices") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    auto m = support::random_qmat(rng, 1 + t % 5, -4, 4);
    if (!m.is_invertible()) {
      CHECK_THROWS_WITH_AS(m.inverse(), "singular matrix", MathError);
      continue;
    }
    CHECK((m * m.inverse()).is_identity());
    CHECK((m.inverse() * m).is_identity());
  }
  CHECK_THROWS_AS(qmat({{"1", "0"}, {"0", "0"}}).inverse(), MathError);
  auto g = qmat({{"1", "1"}, {"0", "1"}});
  CHECK(g.pow(-3).str() == "[[1, -3], [0, 1]]");
}

TEST_CASE("minimal polynomial annihilates and is minimal") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 5;
    auto g = t % 2 ? support::random_qmat(rng, n, -2, 2) : random_triangularizable(rng, n);
    auto m = minimal_polynomial(g);
    CHECK(m.lead().is_one());
    CHECK(poly_eval(m, g).is_zero());
    std::vector<std::vector<mpq_class>> powers;
    auto x = Matrix<Rational>::identity(g.field(), n);
    for (int k = 0; k < m.degree(); ++k) {
      powers.push_back(as_mpq(x.entries()));
      x = x * g;
    }
    CHECK(rank_oracle(powers) == m.degree());
  }
  CHECK(minimal_polynomial(qmat({{"2", "1"}, {"0", "2"}})).str("t") == "t^2 - 4*t + 4");
  CHECK(minimal_polynomial(qmat({{"3", "0"}, {"0", "3"}})).str("t") == "t - 3");
}

TEST_CASE("nullspace and intersection against rank oracle") {
  std::mt19937_64 rng(3);
  const auto* Q = &RationalField::instance();
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 4;
    auto x = support::random_qmat(rng, n, -1, 1);
    auto N = nullspace(x);
    std::vector<std::vector<mpq_class>> rows;
    for (int i = 0; i < n; ++i) rows.push_back(as_mpq(x.row(i)));
    CHECK(N.dim() == n - rank_oracle(rows));
    for (const auto& v : N.rows()) CHECK(vec_is_zero(vec_times(v, x)));

    std::vector<Vec<Rational>> a, b;
    std::uniform_int_distribution<int> d(-2, 2), k(1, n);
    for (int i = k(rng); i > 0; --i) a.push_back(support::random_qmat(rng, n, -2, 2).row(0));
    for (int i = k(rng); i > 0; --i) b.push_back(support::random_qmat(rng, n, -2, 2).row(0));
    auto A = Subspace<Rational>::span(Q, n, a), B = Subspace<Rational>::span(Q, n, b);
    auto I = intersect(A, B);
    std::vector<std::vector<mpq_class>> sum;
    for (const auto& v : a) sum.push_back(as_mpq(v));
    for (const auto& v : b) sum.push_back(as_mpq(v));
    CHECK(I.dim() == A.dim() + B.dim() - rank_oracle(sum));
    for (const auto& v : I.rows()) {
      CHECK(A.contains(v));
      CHECK(B.contains(v));
    }
  }
}

TEST_CASE("Jordan decomposition of triangularizable rational matrices") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 6;
    auto g = random_triangularizable(rng, n);
    auto J = jordan_decomposition(g);
    CHECK(J.d * J.u == g);
    CHECK(J.u * J.d == g);
    auto m = minimal_polynomial(J.d);
    CHECK(gcd(m, m.derivative()).degree() == 0);
    CHECK(is_unipotent(J.u));
  }
  auto J = jordan_decomposition(qmat({{"2", "1"}, {"0", "2"}}));
  CHECK(J.d.str() == "[[2, 0], [0, 2]]");
  CHECK(J.u.str() == "[[1, 1/2], [0, 1]]");
}

TEST_CASE("Jordan decomposition over a function field") {
  auto ctx = support::field_ctx<QX>(R"({"type":"function_field","base":{"type":"rationals"}})");
  auto g = support::mat<QX>(ctx.F(), {{"x", "1", "0"}, {"0", "x", "0"}, {"0", "0", "x + 1"}});
  auto J = jordan_decomposition(g);
  CHECK(J.d * J.u == g);
  CHECK(J.u * J.d == g);
  CHECK(is_diagonalizable(J.d));
  CHECK(is_unipotent(J.u));
  CHECK_FALSE(J.u.is_identity());
}

TEST_CASE("diagonalizability") {
  CHECK(is_diagonalizable(qmat({{"2", "0"}, {"0", "3"}})));
  CHECK(is_diagonalizable(qmat({{"0", "-1"}, {"1", "0"}})));
  CHECK_FALSE(is_diagonalizable(qmat({{"1", "1"}, {"0", "1"}})));
  auto ctx = support::field_ctx<FFX>(R"({"type":"function_field","base":{"type":"finite_field","p":19}})");
  CHECK_FALSE(is_diagonalizable(support::mat<FFX>(ctx.F(), {{"1", "x"}, {"0", "1"}})));
  CHECK(is_diagonalizable(support::mat<FFX>(ctx.F(), {{"x", "0"}, {"0", "1"}})));
}

TEST_CASE("block projection onto an invariant subspace") {
  const auto* Q = &RationalField::instance();
  auto U = Subspace<Rational>::span(Q, 3, {{q(0), q(1), q(0)}});
  auto a = qmat({{"1", "2", "3"}, {"0", "5", "0"}, {"0", "7", "9"}});
  auto bp = block_projection(U, {a});
  CHECK(bp.k == 1);
  CHECK(bp.on_sub[0].str() == "[[5]]");
  CHECK(bp.on_quotient[0].str() == "[[1, 3], [0, 9]]");
  auto bad = qmat({{"1", "0", "0"}, {"0", "1", "1"}, {"0", "0", "1"}});
  CHECK_THROWS_WITH_AS(block_projection(U, {a, bad}), "subspace is not invariant under matrix 1", MathError);
}
