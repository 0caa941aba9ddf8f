#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "tits/congruence.hpp"
#include "tits/finite_image.hpp"
#include "tits/matrix.hpp"

namespace tits {

/// Value of a word in the given generators, multiplied out letter by letter.
template <class E>
Matrix<E> evaluate_word(const Word& w, const std::vector<Matrix<E>>& S, const std::vector<Matrix<E>>& S_inv) {
  Matrix<E> x = Matrix<E>::identity(S[0].field(), S[0].n());
  for (auto l : w) x = x * (l > 0 ? S[l - 1] : S_inv[-l - 1]);
  return x;
}

struct KernelStats {
  std::uint64_t relators = 0;
  std::uint64_t trivial = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t emitted = 0;
};

/// Normal generators of the congruence kernel, produced one BFS layer of the Cayley graph
/// at a time. Relator values are computed from cached tree-path products, so each value
/// costs two matrix products. The output of each layer is sorted by canonical string and
/// deduplicated against everything emitted before.
template <class E>
class KernelStream {
 public:
  KernelStream(const EnumeratedGroup& G, std::vector<Matrix<E>> S, const WHomomorphism<E>& psi, bool parallel = true)
      : G_(&G), P_(G), S_(std::move(S)), psi_(&psi), parallel_(parallel) {
    S_inv_ = inverses(S_);
    const auto I = Matrix<E>::identity(S_[0].field(), S_[0].n());
    T_cur_ = {I};
    Ti_cur_ = {I};
    fill_next(0);
  }

  bool done() const { return layer_ >= G_->layers(); }
  int layer() const { return layer_; }
  const KernelStats& stats() const { return stats_; }

  /// New kernel elements from the relators of the next layer (possibly empty).
  std::vector<Matrix<E>> next_layer() {
    if (done()) return {};
    const int d = layer_;
    const auto edges = P_.edges_in_layer(d);
    std::vector<std::optional<Matrix<E>>> values(edges.size());
    const std::uint32_t b0 = G_->layer_begin(d);
    auto value = [&](std::size_t i) {
      const auto& e = edges[i];
      values[i] = T_cur_[e.u - b0] * S_[e.gen] * tinv(e.v);
    };
    const auto m = static_cast<std::int64_t>(edges.size());
    if (parallel_) {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < m; ++i) value(static_cast<std::size_t>(i));
    } else {
      for (std::int64_t i = 0; i < m; ++i) value(static_cast<std::size_t>(i));
    }
    stats_.relators += edges.size();

    std::vector<std::pair<std::string, Matrix<E>>> fresh;
    for (auto& v : values) {
      if (v->is_identity()) {
        ++stats_.trivial;
        continue;
      }
      if (!apply_whom(*psi_, *v).is_identity())
        throw InternalError("kernel element does not map to the identity: " + v->str());
      std::string key = v->str();
      if (!seen_.insert(key).second) {
        ++stats_.duplicates;
        continue;
      }
      fresh.emplace_back(std::move(key), std::move(*v));
    }
    std::sort(fresh.begin(), fresh.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Matrix<E>> out;
    for (auto& f : fresh) out.push_back(std::move(f.second));
    stats_.emitted += out.size();

    ++layer_;
    if (!done()) {
      T_prev_ = std::move(T_cur_);
      Ti_prev_ = std::move(Ti_cur_);
      T_cur_ = std::move(T_next_);
      Ti_cur_ = std::move(Ti_next_);
      fill_next(layer_);
    }
    return out;
  }

  std::vector<Matrix<E>> all() {
    std::vector<Matrix<E>> out;
    while (!done()) {
      auto l = next_layer();
      out.insert(out.end(), l.begin(), l.end());
    }
    return out;
  }

 private:
  const Matrix<E>& tinv(std::uint32_t v) const {
    const int dv = G_->depth(v);
    const int d = layer_;
    if (dv == d) return Ti_cur_[v - G_->layer_begin(d)];
    if (dv == d + 1) return Ti_next_[v - G_->layer_begin(d + 1)];
    if (dv == d - 1) return Ti_prev_[v - G_->layer_begin(d - 1)];
    throw InternalError("Cayley edge spans more than one layer");
  }

  // Tree-path products (and their inverses) for layer d + 1, from those of layer d.
  void fill_next(int d) {
    T_next_.clear();
    Ti_next_.clear();
    if (d + 1 >= G_->layers()) return;
    const std::uint32_t b = G_->layer_begin(d + 1), e = G_->layer_end(d + 1), pb = G_->layer_begin(d);
    const auto I = Matrix<E>::identity(S_[0].field(), S_[0].n());
    T_next_.assign(e - b, I);
    Ti_next_.assign(e - b, I);
    const int r = G_->rank();
    auto one = [&](std::uint32_t v) {
      const std::uint32_t u = G_->parent(v);
      const int l = G_->parent_letter(v);
      const Matrix<E>& s = l < r ? S_[l] : S_inv_[l - r];
      const Matrix<E>& si = l < r ? S_inv_[l] : S_[l - r];
      T_next_[v - b] = T_cur_[u - pb] * s;
      Ti_next_[v - b] = si * Ti_cur_[u - pb];
    };
    const auto m = static_cast<std::int64_t>(e - b);
    if (parallel_) {
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < m; ++i) one(b + static_cast<std::uint32_t>(i));
    } else {
      for (std::int64_t i = 0; i < m; ++i) one(b + static_cast<std::uint32_t>(i));
    }
  }

  const EnumeratedGroup* G_;
  Presentation P_;
  std::vector<Matrix<E>> S_, S_inv_;
  const WHomomorphism<E>* psi_;
  bool parallel_;
  int layer_ = 0;
  std::vector<Matrix<E>> T_prev_, T_cur_, T_next_;
  std::vector<Matrix<E>> Ti_prev_, Ti_cur_, Ti_next_;
  std::unordered_set<std::string> seen_;
  KernelStats stats_;
};

/// Reference computation: every relator word multiplied out letter by letter, identities
/// dropped, duplicates removed, sorted by canonical string.
template <class E>
std::vector<Matrix<E>> reference_normal_generators(const EnumeratedGroup& G, const std::vector<Matrix<E>>& S) {
  const auto S_inv = inverses(S);
  Presentation P(G);
  std::vector<std::pair<std::string, Matrix<E>>> all;
  std::unordered_set<std::string> seen;
  P.for_each_edge([&](const Presentation::Edge& e) {
    Matrix<E> v = evaluate_word(P.relator(e), S, S_inv);
    if (v.is_identity()) return;
    std::string key = v.str();
    if (seen.insert(key).second) all.emplace_back(std::move(key), std::move(v));
  });
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Matrix<E>> out;
  for (auto& a : all) out.push_back(std::move(a.second));
  return out;
}

}  // namespace tits
