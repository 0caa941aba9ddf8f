#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tits/errors.hpp"
#include "tits/matrix.hpp"
#include "tits/poly.hpp"

namespace tits {

template <class E>
using Vec = std::vector<E>;

template <class E>
Vec<E> vec_times(const Vec<E>& v, const Matrix<E>& g) {
  const int n = g.n();
  Vec<E> r(n, g.field()->zero());
  for (int k = 0; k < n; ++k) {
    if (v[k].is_zero()) continue;
    for (int j = 0; j < n; ++j)
      if (!g(k, j).is_zero()) r[j] = r[j] + v[k] * g(k, j);
  }
  return r;
}

template <class E>
bool vec_is_zero(const Vec<E>& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

/// Incremental semi-echelon basis of a subspace of F^dim. Each stored row has a pivot
/// entry 1 and is zero at the pivots of all earlier rows.
template <class E>
class SpanBuilder {
 public:
  using Field = typename E::Field;

  SpanBuilder(const Field* f, int dim) : f_(f), dim_(dim) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return dim_; }
  const std::vector<Vec<E>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  Vec<E> reduce(Vec<E> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const E c = v[piv_[i]];
      if (c.is_zero()) continue;
      const Vec<E>& r = rows_[i];
      for (int j = 0; j < dim_; ++j)
        if (!r[j].is_zero()) v[j] = v[j] - c * r[j];
    }
    return v;
  }

  bool contains(const Vec<E>& v) const { return vec_is_zero(reduce(v)); }

  /// Adds v when independent; returns whether the span grew.
  bool add(const Vec<E>& v) {
    if (dim() == dim_) return false;
    Vec<E> r = reduce(v);
    int p = -1;
    for (int j = 0; j < dim_; ++j)
      if (!r[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) return false;
    const E inv = r[p].inv();
    for (auto& e : r) e = e * inv;
    rows_.push_back(std::move(r));
    piv_.push_back(p);
    return true;
  }

 private:
  const Field* f_;
  int dim_;
  std::vector<Vec<E>> rows_;
  std::vector<int> piv_;
};

/// Reduced row echelon form in place over the first `ncols` pivot columns; drops zero rows.
/// Returns pivot columns.
template <class E>
std::vector<int> rref(std::vector<Vec<E>>& rows, int pivot_cols) {
  std::vector<int> piv;
  std::size_t r = 0;
  for (int c = 0; c < pivot_cols && r < rows.size(); ++c) {
    std::size_t k = r;
    while (k < rows.size() && rows[k][c].is_zero()) ++k;
    if (k == rows.size()) continue;
    std::swap(rows[r], rows[k]);
    const E inv = rows[r][c].inv();
    for (auto& e : rows[r]) e = e * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const E m = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j)
        if (!rows[r][j].is_zero()) rows[i][j] = rows[i][j] - m * rows[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  // rows beyond r are zero on the pivot columns; keep them only if the caller needs them
  std::vector<Vec<E>> tail(rows.begin() + static_cast<long>(r), rows.end());
  rows.resize(r);
  for (auto& t : tail)
    if (!vec_is_zero(t)) rows.push_back(std::move(t));
  return piv;
}

/// Subspace of F^n stored as an RREF basis of row vectors.
template <class E>
class Subspace {
 public:
  using Field = typename E::Field;

  Subspace(const Field* f, int n) : f_(f), n_(n) {}

  static Subspace full(const Field* f, int n) {
    std::vector<Vec<E>> rows;
    for (int i = 0; i < n; ++i) {
      Vec<E> v(n, f->zero());
      v[i] = f->one();
      rows.push_back(std::move(v));
    }
    return span(f, n, std::move(rows));
  }

  static Subspace span(const Field* f, int n, std::vector<Vec<E>> vecs) {
    Subspace s(f, n);
    s.piv_ = rref(vecs, n);
    s.rows_ = std::move(vecs);
    return s;
  }

  const Field* field() const { return f_; }
  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec<E>>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return piv_; }

  bool contains(const Vec<E>& v) const {
    Vec<E> w = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const E c = w[piv_[i]];
      if (c.is_zero()) continue;
      for (int j = 0; j < n_; ++j)
        if (!rows_[i][j].is_zero()) w[j] = w[j] - c * rows_[i][j];
    }
    return vec_is_zero(w);
  }
  bool contains(const Subspace& o) const {
    for (const auto& r : o.rows_)
      if (!contains(r)) return false;
    return true;
  }

  /// {v*g : v in this}
  Subspace image(const Matrix<E>& g) const {
    std::vector<Vec<E>> v;
    for (const auto& r : rows_) v.push_back(vec_times(r, g));
    return span(f_, n_, std::move(v));
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }

 private:
  const Field* f_;
  int n_;
  std::vector<Vec<E>> rows_;
  std::vector<int> piv_;
};

/// Zassenhaus intersection.
template <class E>
Subspace<E> intersect(const Subspace<E>& a, const Subspace<E>& b) {
  const int n = a.ambient();
  const auto* f = a.field();
  if (a.dim() == 0 || b.dim() == 0) return Subspace<E>(f, n);
  if (a.dim() == n) return b;
  if (b.dim() == n) return a;
  std::vector<Vec<E>> rows;
  for (const auto& r : a.rows()) {
    Vec<E> v = r;
    v.insert(v.end(), r.begin(), r.end());
    rows.push_back(std::move(v));
  }
  for (const auto& r : b.rows()) {
    Vec<E> v = r;
    v.resize(2 * n, f->zero());
    rows.push_back(std::move(v));
  }
  std::vector<int> piv = rref(rows, n);
  std::vector<Vec<E>> out;
  for (std::size_t i = piv.size(); i < rows.size(); ++i) out.emplace_back(rows[i].begin() + n, rows[i].end());
  return Subspace<E>::span(f, n, std::move(out));
}

/// {v : v*x = 0}
template <class E>
Subspace<E> nullspace(const Matrix<E>& x) {
  const int n = x.n();
  const auto* f = x.field();
  std::vector<Vec<E>> rows;
  for (int i = 0; i < n; ++i) {
    Vec<E> v = x.row(i);
    v.resize(2 * n, f->zero());
    v[n + i] = f->one();
    rows.push_back(std::move(v));
  }
  std::vector<int> piv = rref(rows, n);
  std::vector<Vec<E>> out;
  for (std::size_t i = piv.size(); i < rows.size(); ++i) out.emplace_back(rows[i].begin() + n, rows[i].end());
  return Subspace<E>::span(f, n, std::move(out));
}

template <class E>
Matrix<E> poly_eval(const Poly<E>& p, const Matrix<E>& g) {
  const auto* f = g.field();
  Matrix<E> acc(f, g.n());
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    acc = acc * g;
    for (int i = 0; i < g.n(); ++i) acc.at(i, i) = acc(i, i) + p.coeffs()[k];
  }
  return acc;
}

/// Minimal polynomial as the lcm of the local minimal polynomials of the standard basis
/// vectors (Krylov sequences e_i, e_i g, e_i g^2, ...).
template <class E>
Poly<E> minimal_polynomial(const Matrix<E>& g) {
  const int n = g.n();
  const auto* f = g.field();
  Poly<E> m = Poly<E>::constant(f->one());
  SpanBuilder<E> seen(f, n);
  for (int i = 0; i < n && seen.dim() < n; ++i) {
    Vec<E> v(n, f->zero());
    v[i] = f->one();
    if (seen.contains(v)) continue;
    // rows: Krylov vector (n entries) followed by its coefficients in terms of v, vg, vg^2, ...
    std::vector<Vec<E>> rows;
    std::vector<int> piv;
    for (int k = 0; k <= n; ++k) {
      Vec<E> w = v;
      w.resize(n + n + 1, f->zero());
      w[n + k] = f->one();
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const E c = w[piv[r]];
        if (c.is_zero()) continue;
        for (int j = 0; j < 2 * n + 1; ++j)
          if (!rows[r][j].is_zero()) w[j] = w[j] - c * rows[r][j];
      }
      int p = -1;
      for (int j = 0; j < n; ++j)
        if (!w[j].is_zero()) {
          p = j;
          break;
        }
      if (p < 0) {
        std::vector<E> c(w.begin() + n, w.begin() + n + k + 1);
        m = lcm(m, Poly<E>(f, std::move(c)).monic());
        break;
      }
      const E inv = w[p].inv();
      for (auto& e : w) e = e * inv;
      rows.push_back(std::move(w));
      piv.push_back(p);
      seen.add(v);
      v = vec_times(v, g);
    }
  }
  return m;
}

template <class E>
bool is_unipotent(const Matrix<E>& g) {
  Matrix<E> x = g - Matrix<E>::identity(g.field(), g.n());
  return x.pow(g.n()).is_zero();
}

template <class E>
bool is_nilpotent(const Matrix<E>& x) {
  return x.pow(x.n()).is_zero();
}

/// Diagonalizable over the algebraic closure: minimal polynomial coprime to its derivative.
template <class E>
bool is_diagonalizable(const Matrix<E>& g) {
  Poly<E> m = minimal_polynomial(g);
  return gcd(m, m.derivative()).degree() == 0;
}

template <class E>
struct JordanParts {
  Matrix<E> d;  // diagonalizable part
  Matrix<E> u;  // unipotent part
};

/// Multiplicative Jordan decomposition g = d*u = u*d in characteristic zero. The
/// diagonalizable part is the Newton limit z <- z - s(z) s'(z)^-1 from z = g, where s is
/// the squarefree part of the minimal polynomial.
template <class E>
JordanParts<E> jordan_decomposition(const Matrix<E>& g) {
  if (g.field()->characteristic() != 0) throw MathError("Jordan decomposition is implemented for characteristic zero");
  const Matrix<E> g_inv = g.inverse();
  Poly<E> s = squarefree_part(minimal_polynomial(g));
  Poly<E> ds = s.derivative();
  const int n = g.n();
  int steps = 2;
  while ((1 << (steps - 2)) < n) ++steps;
  Matrix<E> z = g;
  for (int it = 0;; ++it) {
    Matrix<E> sz = poly_eval(s, z);
    if (sz.is_zero()) break;
    if (it == steps) throw InternalError("Newton iteration for the Jordan decomposition did not converge");
    z = z - sz * poly_eval(ds, z).inverse();
  }
  return {z, z.inverse() * g};
}

/// Result of projecting matrices preserving U onto the diagonal blocks of the basis
/// (basis of U, unit vectors at the non-pivot columns of U).
template <class E>
struct BlockProjection {
  Matrix<E> basis;  // rows: basis of U, then the complement
  int k = 0;        // dim U
  std::vector<Matrix<E>> on_sub;
  std::vector<Matrix<E>> on_quotient;
};

template <class E>
Matrix<E> adapted_basis(const Subspace<E>& U) {
  const int n = U.ambient();
  const auto* f = U.field();
  std::vector<E> a;
  a.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : U.rows()) a.insert(a.end(), r.begin(), r.end());
  std::vector<bool> is_piv(n, false);
  for (int p : U.pivots()) is_piv[p] = true;
  for (int j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    for (int c = 0; c < n; ++c) a.push_back(c == j ? f->one() : f->zero());
  }
  return Matrix<E>(f, n, std::move(a));
}

template <class E>
Matrix<E> sub_block(const Matrix<E>& m, int start, int size) {
  Matrix<E> r(m.field(), size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) r.at(i, j) = m(start + i, start + j);
  return r;
}

template <class E>
BlockProjection<E> block_projection(const Subspace<E>& U, const std::vector<Matrix<E>>& H) {
  const int n = U.ambient();
  BlockProjection<E> out;
  out.k = U.dim();
  out.basis = adapted_basis(U);
  if (out.k == n) {
    out.on_sub = H;
    return out;
  }
  const Matrix<E> P_inv = out.basis.inverse();
  for (std::size_t idx = 0; idx < H.size(); ++idx) {
    Matrix<E> m = out.basis * H[idx] * P_inv;
    for (int i = 0; i < out.k; ++i)
      for (int j = out.k; j < n; ++j)
        if (!m(i, j).is_zero())
          throw MathError("subspace is not invariant under matrix " + std::to_string(idx));
    out.on_sub.push_back(sub_block(m, 0, out.k));
    out.on_quotient.push_back(sub_block(m, out.k, n - out.k));
  }
  return out;
}

}  // namespace tits
