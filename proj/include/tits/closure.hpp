#pragma once

#include <string>
#include <vector>

#include "tits/congruence.hpp"
#include "tits/linalg.hpp"
#include "tits/matrix.hpp"

namespace tits {

template <class E>
Vec<E> flatten(const Matrix<E>& m) {
  return m.entries();
}

enum class ClosureVariant { Group, Star };

/// Basis of the algebra generated by the conjugates of K under a group, built
/// incrementally. Saturation keeps span(saturated()) closed under conjugation by the
/// conjugators; spin-up multiplies the basis on the right by the saturated set.
template <class E>
class AlgebraClosure {
 public:
  using Field = typename E::Field;

  AlgebraClosure(const Field* f, int n, const std::vector<Matrix<E>>& S, ClosureVariant variant)
      : f_(f), n_(n), variant_(variant), sat_span_(f, n * n), alg_span_(f, n * n) {
    conj_ = S;
    auto inv = inverses(S);
    conj_.insert(conj_.end(), inv.begin(), inv.end());
    for (const auto& s : S) conj_inv_.push_back(s.inverse());
    conj_inv_.insert(conj_inv_.end(), S.begin(), S.end());
  }

  ClosureVariant variant() const { return variant_; }
  int n() const { return n_; }
  /// Saturated generating set (span closed under conjugation).
  const std::vector<Matrix<E>>& saturated() const { return sat_; }
  /// Basis of the generated algebra; group-variant elements are products of saturated ones.
  const std::vector<Matrix<E>>& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  /// Number of times the saturated span grew.
  int saturation_steps() const { return steps_; }
  bool contains(const Matrix<E>& m) const { return alg_span_.contains(flatten(m)); }
  const std::vector<Matrix<E>>& conjugators() const { return conj_; }

  /// Adds k (and k^-1 for the group variant); returns whether the algebra grew.
  bool add(const Matrix<E>& k) {
    const int before = dim();
    if (variant_ == ClosureVariant::Group) {
      push_saturated(k);
      push_saturated(k.inverse());
    } else if (!k.is_zero()) {
      push_saturated(k);
    }
    saturate();
    spin_up();
    return dim() > before;
  }

  void add_all(const std::vector<Matrix<E>>& K) {
    for (const auto& k : K) add(k);
  }

  bool is_full() const { return dim() == n_ * n_; }

  bool pairwise_commuting() const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = i + 1; j < basis_.size(); ++j)
        if (!commute(basis_[i], basis_[j])) return false;
    return true;
  }

 private:
  void push_saturated(const Matrix<E>& m) {
    if (sat_span_.add(flatten(m))) {
      sat_.push_back(m);
      ++steps_;
      if (steps_ > n_ * n_) throw InternalError("closure saturation exceeded n^2 steps");
    }
  }

  void saturate() {
    for (; sat_done_ < sat_.size(); ++sat_done_) {
      for (std::size_t j = 0; j < conj_.size(); ++j) {
        push_saturated(conj_inv_[j] * sat_[sat_done_] * conj_[j]);
      }
    }
  }

  void spin_up() {
    auto push = [&](const Matrix<E>& m) {
      if (alg_span_.add(flatten(m))) basis_.push_back(m);
    };
    for (std::size_t i = seeded_; i < sat_.size(); ++i) push(sat_[i]);
    seeded_ = sat_.size();
    // Every product basis[i] * sat[j] must lie in the span; recheck all pairs involving new elements.
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const std::size_t j0 = i < spun_rows_ ? spun_cols_ : 0;
      for (std::size_t j = j0; j < sat_.size(); ++j) push(basis_[i] * sat_[j]);
    }
    spun_rows_ = basis_.size();
    spun_cols_ = sat_.size();
  }

  const Field* f_;
  int n_;
  ClosureVariant variant_;
  std::vector<Matrix<E>> conj_, conj_inv_;
  std::vector<Matrix<E>> sat_;
  SpanBuilder<E> sat_span_;
  std::size_t sat_done_ = 0;
  int steps_ = 0;
  std::vector<Matrix<E>> basis_;
  SpanBuilder<E> alg_span_;
  std::size_t seeded_ = 0;
  std::size_t spun_rows_ = 0, spun_cols_ = 0;
};

template <class E>
AlgebraClosure<E> basis_algebra_closure(const std::vector<Matrix<E>>& K, const std::vector<Matrix<E>>& S,
                                        ClosureVariant variant = ClosureVariant::Group) {
  AlgebraClosure<E> c(S.at(0).field(), S.at(0).n(), S, variant);
  c.add_all(K);
  return c;
}

template <class E>
AlgebraClosure<E> basis_algebra_closure_star(const std::vector<Matrix<E>>& K, const std::vector<Matrix<E>>& S) {
  return basis_algebra_closure(K, S, ClosureVariant::Star);
}

template <class E>
bool is_abelian_closure(const std::vector<Matrix<E>>& K, const std::vector<Matrix<E>>& S) {
  return basis_algebra_closure(K, S).pairwise_commuting();
}

/// Whether the algebra spanned by `basis` (closed under products) is nilpotent: the
/// iterated products span(B)^k reach zero within n steps.
template <class E>
bool is_nilpotent_algebra(const std::vector<Matrix<E>>& basis, int n) {
  if (basis.empty()) return true;
  const auto* f = basis[0].field();
  std::vector<Matrix<E>> power = basis;
  for (int k = 1; k <= n; ++k) {
    if (power.empty()) return true;
    SpanBuilder<E> span(f, n * n);
    std::vector<Matrix<E>> next;
    for (const auto& p : power)
      for (const auto& b : basis) {
        Matrix<E> m = p * b;
        if (span.add(flatten(m))) next.push_back(std::move(m));
      }
    power = std::move(next);
  }
  return power.empty();
}

template <class E>
bool is_unipotent_closure(const std::vector<Matrix<E>>& K, const std::vector<Matrix<E>>& S) {
  const int n = S.at(0).n();
  const auto I = Matrix<E>::identity(S[0].field(), n);
  std::vector<Matrix<E>> shifted;
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (!is_unipotent(K[i])) throw MathError("closure input " + std::to_string(i) + " is not unipotent");
    shifted.push_back(K[i] - I);
  }
  AlgebraClosure<E> c(S[0].field(), n, S, ClosureVariant::Star);
  for (const auto& k : shifted) {
    c.add(k);
    if (c.dim() > n * (n - 1) / 2) return false;
  }
  for (const auto& b : c.basis())
    if (!is_nilpotent(b)) return false;
  return is_nilpotent_algebra(c.basis(), n);
}

/// Largest subspace of the left nullspace of x invariant under T.
template <class E>
Subspace<E> module_via_nullspace(const std::vector<Matrix<E>>& T, const Matrix<E>& x) {
  Subspace<E> W = nullspace(x);
  std::vector<Matrix<E>> both = T;
  for (const auto& t : T) both.push_back(t.inverse());
  for (int round = 0; W.dim() > 0; ++round) {
    if (round > x.n()) throw InternalError("invariant subspace search did not stabilize");
    Subspace<E> next = W;
    for (const auto& g : both) next = intersect(next, W.image(g));
    if (next.dim() == W.dim()) break;
    W = std::move(next);
  }
  return W;
}

}  // namespace tits
