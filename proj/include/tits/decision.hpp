#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tits/closure.hpp"
#include "tits/congruence.hpp"
#include "tits/finite_image.hpp"
#include "tits/kernel.hpp"
#include "tits/linalg.hpp"

namespace tits {

enum class Verdict { True, False, Undecided };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    default:
      return "undecided";
  }
}

inline const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"solvable-by-finite",  "solvable",          "nilpotent-by-finite",
                                              "abelian-by-finite",   "central-by-finite", "completely-reducible"};
  return names;
}

struct Decision {
  std::string property;
  Verdict verdict = Verdict::Undecided;
  std::string reason;  // short code
  std::string detail;
  nlohmann::json certificate = nlohmann::json::object();
  std::map<std::string, double> timings;
};

struct DecideOptions {
  WHomOptions whom;
  std::uint64_t cap = EnumeratedGroup::kDefaultCap;
  std::optional<std::uint64_t> fast_path_bound;
  bool parallel = true;
};

struct RecursionFrame {
  int depth = 0;
  int dim = 0;
  int basis_size = 0;
  int generators = 0;
  std::optional<std::pair<int, int>> pair;
  int sub_dim = -1;
  bool result = false;
};

template <class E>
struct ExploreResult {
  bool value = false;
  std::vector<RecursionFrame> trace;
  /// On success: rows form a basis whose leading block sums are invariant under the input.
  Matrix<E> flag_basis;
  std::vector<int> blocks;
  int max_depth = 0;
};

namespace detail {

template <class E>
bool explore(const std::vector<Matrix<E>>& A, const std::vector<Matrix<E>>& T, int depth, ExploreResult<E>& out,
             Matrix<E>& P, std::vector<int>& blocks) {
  const int m = T.at(0).n();
  const auto* f = T[0].field();
  out.max_depth = std::max(out.max_depth, depth);
  RecursionFrame fr;
  fr.depth = depth;
  fr.dim = m;
  fr.basis_size = static_cast<int>(A.size());
  fr.generators = static_cast<int>(T.size());
  const std::size_t slot = out.trace.size();
  out.trace.push_back(fr);
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      const Matrix<E> x = A[i] * A[j] - A[j] * A[i];
      if (x.is_zero()) continue;
      out.trace[slot].pair = {static_cast<int>(i), static_cast<int>(j)};
      const Subspace<E> U = module_via_nullspace(T, x);
      out.trace[slot].sub_dim = U.dim();
      if (U.dim() == 0) return false;
      const auto bpA = block_projection(U, A);
      const auto bpT = block_projection(U, T);
      Matrix<E> P1, P2;
      std::vector<int> b1, b2;
      if (!explore(bpA.on_sub, bpT.on_sub, depth + 1, out, P1, b1)) return false;
      if (!explore(bpA.on_quotient, bpT.on_quotient, depth + 1, out, P2, b2)) return false;
      const int k = bpA.k;
      Matrix<E> D(f, m);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) D.at(r, c) = P1(r, c);
      for (int r = 0; r < m - k; ++r)
        for (int c = 0; c < m - k; ++c) D.at(k + r, k + c) = P2(r, c);
      P = D * bpA.basis;
      blocks = b1;
      blocks.insert(blocks.end(), b2.begin(), b2.end());
      out.trace[slot].result = true;
      return true;
    }
  P = Matrix<E>::identity(f, m);
  blocks = {m};
  out.trace[slot].result = true;
  return true;
}

}  // namespace detail

/// Decides whether the group generated by T (containing the elements of A) has a
/// unipotent-by-abelian normal closure of A, by splitting along invariant subspaces of
/// commutators.
template <class E>
ExploreResult<E> explore_basis(const std::vector<Matrix<E>>& A, const std::vector<Matrix<E>>& T) {
  ExploreResult<E> out;
  Matrix<E> P;
  std::vector<int> blocks;
  out.value = detail::explore(A, T, 0, out, P, blocks);
  if (out.value) {
    out.flag_basis = std::move(P);
    out.blocks = std::move(blocks);
  }
  return out;
}

/// Whether a maps each leading block-sum of the rows of P into itself.
template <class E>
bool preserves_flag(const Matrix<E>& P, const std::vector<int>& blocks, const Matrix<E>& a) {
  const Matrix<E> m = P * a * P.inverse();
  std::vector<int> block_of;
  for (std::size_t b = 0; b < blocks.size(); ++b) block_of.insert(block_of.end(), blocks[b], static_cast<int>(b));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j)
      if (block_of[j] > block_of[i] && !m(i, j).is_zero()) return false;
  return true;
}

inline nlohmann::json trace_json(const std::vector<RecursionFrame>& trace) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : trace) {
    nlohmann::json j{{"depth", f.depth}, {"dim", f.dim}, {"basis", f.basis_size}, {"result", f.result}};
    if (f.pair) j["pair"] = {f.pair->first, f.pair->second};
    if (f.sub_dim >= 0) j["submodule_dim"] = f.sub_dim;
    out.push_back(j);
  }
  return out;
}

/// Small characteristic: the kernel must be generated by unipotent elements (characteristic
/// zero ring) or by diagonalizable ones (positive characteristic).
template <class E>
bool check_small_characteristic(const std::vector<Matrix<E>>& K, unsigned long ring_characteristic) {
  for (const auto& k : K) {
    if (ring_characteristic == 0 ? !is_unipotent(k) : !is_diagonalizable(k)) return false;
  }
  return true;
}

template <class E>
class Decider {
 public:
  Decider(std::vector<Matrix<E>> S, DecideOptions opt = {}) : S_(std::move(S)), opt_(std::move(opt)) {
    if (S_.empty()) throw InputError("empty generating set");
    inverses(S_);
  }

  const std::vector<Matrix<E>>& generators() const { return S_; }
  int n() const { return S_[0].n(); }
  unsigned long characteristic() const { return S_[0].field()->characteristic(); }

  const WHomomorphism<E>& whom() {
    if (!psi_) {
      auto t = clock();
      psi_ = std::make_unique<WHomomorphism<E>>(build_whom(S_, opt_.whom));
      time("congruence", t);
    }
    return *psi_;
  }

  const EnumeratedGroup& image() {
    if (!G_) {
      const auto& psi = whom();
      auto t = clock();
      std::vector<FFMatrix> imgs;
      for (const auto& s : S_) imgs.push_back(apply_whom(psi, s));
      G_ = std::make_unique<EnumeratedGroup>(EnumeratedGroup::enumerate(imgs, opt_.cap));
      time("enumeration", t);
      t = clock();
      cayley_presentation(*G_);
      time("presentation", t);
    }
    return *G_;
  }

  /// Feeds kernel normal generators to `consume` until it returns false or the kernel is
  /// exhausted; returns whether all were consumed.
  bool stream_kernel(const std::function<bool(const Matrix<E>&)>& consume) {
    for (const auto& k : K_)
      if (!consume(k)) return false;
    const auto& G = image();
    if (!stream_) stream_ = std::make_unique<KernelStream<E>>(G, S_, *psi_, opt_.parallel);
    while (!stream_->done()) {
      auto t = clock();
      auto layer = stream_->next_layer();
      time("kernel", t);
      const std::size_t start = K_.size();
      for (auto& k : layer) K_.push_back(std::move(k));
      for (std::size_t i = start; i < K_.size(); ++i)
        if (!consume(K_[i])) return false;
    }
    return true;
  }

  const std::vector<Matrix<E>>& kernel() {
    stream_kernel([](const Matrix<E>&) { return true; });
    return K_;
  }
  bool kernel_complete() const { return stream_ && stream_->done(); }

  Decision solvable_by_finite() {
    return guarded("solvable-by-finite", [&](Decision& d) {
      if (small_characteristic_failure(d)) return;
      if (opt_.fast_path_bound && characteristic() == 0) {
        auto t = clock();
        const std::uint64_t idx = solvable_radical_index(image());
        time("fast-path", t);
        d.certificate["fast_path"] = {{"bound", *opt_.fast_path_bound}, {"radical_index", idx}};
        if (idx > *opt_.fast_path_bound) {
          d.verdict = Verdict::False;
          d.reason = "fast-path";
          return;
        }
      } else {
        d.certificate["fast_path"] = "off";
      }
      AlgebraClosure<E> C(S_[0].field(), n(), S_, ClosureVariant::Group);
      auto t = clock();
      const bool complete = stream_kernel([&](const Matrix<E>& k) {
        C.add(k);
        return !(n() >= 2 && C.is_full());
      });
      time("closure", t);
      fill_kernel(d, complete);
      d.certificate["closure_dim"] = C.dim();
      d.certificate["saturation_steps"] = C.saturation_steps();
      if (complete && K_.empty()) {
        d.verdict = Verdict::True;
        d.reason = "finite";
        return;
      }
      t = clock();
      auto r = explore_basis(C.basis(), S_);
      time("explore", t);
      d.certificate["explore"] = {{"trace", trace_json(r.trace)}, {"max_depth", r.max_depth}};
      if (!complete) d.certificate["explore"]["early_exit"] = "closure is the full matrix algebra";
      d.verdict = r.value ? Verdict::True : Verdict::False;
      d.reason = r.value ? "kernel-unipotent-by-abelian" : "no-invariant-submodule";
    });
  }

  Decision solvable() {
    Decision sf = solvable_by_finite();
    return guarded("solvable", [&](Decision& d) {
      d.certificate = sf.certificate;
      d.certificate["solvable_by_finite"] = verdict_name(sf.verdict);
      for (auto& [k, v] : sf.timings) d.timings[k] += v;
      if (sf.verdict != Verdict::True) {
        d.verdict = sf.verdict;
        d.reason = sf.reason;
        d.detail = sf.detail;
        return;
      }
      auto t = clock();
      const bool img = is_solvable_finite(image());
      time("image-solvability", t);
      d.certificate["image_solvable"] = img;
      d.verdict = img ? Verdict::True : Verdict::False;
      d.reason = img ? "solvable-by-finite-and-image-solvable" : "image-not-solvable";
    });
  }

  Decision nilpotent_by_finite() {
    return guarded("nilpotent-by-finite", [&](Decision& d) {
      if (out_of_scope(d)) return;
      if (small_characteristic_failure(d)) return;
      const int n = this->n();
      const auto I = Matrix<E>::identity(S_[0].field(), n);
      std::vector<Matrix<E>> Ku;
      AlgebraClosure<E> Cu(S_[0].field(), n, S_, ClosureVariant::Star);
      AlgebraClosure<E> Cd(S_[0].field(), n, S_, ClosureVariant::Group);
      std::string failure;
      auto t = clock();
      // Both closures only grow with K, so a failure on a prefix of K is final.
      const bool complete = stream_kernel([&](const Matrix<E>& k) {
        auto J = jordan_decomposition(k);
        Cu.add(J.u - I);
        Ku.push_back(std::move(J.u));
        if (Cu.dim() > n * (n - 1) / 2) {
          failure = "unipotent-parts-not-unipotent-closure";
          return false;
        }
        if (Cd.add(J.d) && !Cd.pairwise_commuting()) {
          failure = "semisimple-parts-not-abelian";
          return false;
        }
        return true;
      });
      fill_kernel(d, complete);
      if (complete) {
        const bool unip = is_unipotent_closure(Ku, S_);
        d.certificate["unipotent_closure"] = unip;
        if (!unip) {
          failure = "unipotent-parts-not-unipotent-closure";
        } else {
          d.certificate["diagonal_closure_abelian"] = true;
          auto Cg = basis_algebra_closure(Ku, S_);
          bool cross = true;
          for (const auto& a : Cd.basis())
            for (const auto& b : Cg.basis())
              if (cross && !commute(a, b)) cross = false;
          d.certificate["parts_commute"] = cross;
          if (!cross) failure = "parts-do-not-commute";
        }
      } else {
        d.certificate["early_exit"] = failure;
      }
      time("closure", t);
      d.certificate["unipotent_closure_dim"] = Cu.dim();
      d.certificate["diagonal_closure_dim"] = Cd.dim();
      d.verdict = failure.empty() ? Verdict::True : Verdict::False;
      d.reason = failure.empty() ? "kernel-nilpotent" : failure;
    });
  }

  Decision abelian_by_finite() {
    return guarded("abelian-by-finite", [&](Decision& d) {
      if (out_of_scope(d)) return;
      if (small_characteristic_failure(d)) return;
      AlgebraClosure<E> C(S_[0].field(), n(), S_, ClosureVariant::Group);
      auto t = clock();
      const bool complete = stream_kernel([&](const Matrix<E>& k) {
        if (C.add(k)) return C.pairwise_commuting();
        return true;
      });
      time("closure", t);
      fill_kernel(d, complete);
      d.certificate["closure_dim"] = C.dim();
      d.verdict = complete ? Verdict::True : Verdict::False;
      d.reason = complete ? "kernel-closure-abelian" : "kernel-closure-not-abelian";
    });
  }

  Decision central_by_finite() {
    return guarded("central-by-finite", [&](Decision& d) {
      if (small_characteristic_failure(d)) return;
      std::optional<std::size_t> witness;
      const bool char0 = characteristic() == 0;
      auto t = clock();
      std::size_t idx = 0;
      const bool complete = stream_kernel([&](const Matrix<E>& k) {
        for (const auto& s : S_)
          if (!commute(k, s)) {
            if (!witness) witness = idx;
            if (char0) return false;
          }
        ++idx;
        return true;
      });
      time("commutators", t);
      fill_kernel(d, complete);
      if (!witness) {
        d.verdict = Verdict::True;
        d.reason = "kernel-central";
        return;
      }
      d.certificate["non_central_kernel_element"] = K_[*witness].str();
      if (char0) {
        d.verdict = Verdict::False;
        d.reason = "kernel-not-central";
        return;
      }
      t = clock();
      auto C = basis_algebra_closure(K_, S_);
      bool cr = C.pairwise_commuting();
      for (const auto& b : C.basis())
        if (cr && !is_diagonalizable(b)) cr = false;
      time("closure", t);
      const bool coprime = image().order() % psi_->p != 0;
      d.certificate["kernel_completely_reducible"] = cr;
      d.certificate["p_coprime_to_image_order"] = coprime;
      if (cr && coprime) {
        d.verdict = Verdict::False;
        d.reason = "kernel-not-central";
      } else {
        d.verdict = Verdict::Undecided;
        d.reason = coprime ? "kernel-not-completely-reducible" : "characteristic-divides-image-order";
        d.detail = "cannot certify non-centrality without complete reducibility of the kernel";
      }
    });
  }

  /// `prior` must be a true verdict for solvable-by-finite or a stronger property.
  Decision completely_reducible(const Decision& prior) {
    return guarded("completely-reducible", [&](Decision& d) {
      d.certificate["prior"] = {{"property", prior.property}, {"verdict", verdict_name(prior.verdict)}};
      static const std::vector<std::string> accepted{"solvable-by-finite", "solvable", "nilpotent-by-finite",
                                                     "abelian-by-finite", "central-by-finite"};
      if (prior.verdict != Verdict::True ||
          std::find(accepted.begin(), accepted.end(), prior.property) == accepted.end()) {
        d.verdict = Verdict::Undecided;
        d.reason = "requires-solvable-by-finite";
        d.detail = "the criterion applies only to solvable-by-finite groups";
        return;
      }
      if (small_characteristic_failure(d)) return;
      if (characteristic() != 0 && image().order() % whom().p == 0) {
        d.verdict = Verdict::Undecided;
        d.reason = "characteristic-divides-image-order";
        d.detail = "p divides the order of the finite image";
        return;
      }
      const auto& K = kernel();
      fill_kernel(d, true);
      auto t = clock();
      const bool shortcut = characteristic() == 0 &&
                            (prior.property == "nilpotent-by-finite" || prior.property == "abelian-by-finite");
      bool ok = true;
      if (shortcut) {
        d.certificate["method"] = "unipotent parts trivial";
        for (const auto& k : K)
          if (ok && !is_diagonalizable(k)) ok = false;
      } else {
        d.certificate["method"] = "closure commutes and is diagonalizable";
        auto C = basis_algebra_closure(K, S_);
        d.certificate["closure_dim"] = C.dim();
        ok = C.pairwise_commuting();
        for (const auto& b : C.basis())
          if (ok && !is_diagonalizable(b)) ok = false;
      }
      time("closure", t);
      d.verdict = ok ? Verdict::True : Verdict::False;
      d.reason = ok ? "kernel-diagonalizable-abelian" : "kernel-not-completely-reducible";
    });
  }

  Decision completely_reducible() { return completely_reducible(solvable_by_finite()); }

  Decision decide(const std::string& property) {
    if (property == "solvable-by-finite") return solvable_by_finite();
    if (property == "solvable") return solvable();
    if (property == "nilpotent-by-finite") return nilpotent_by_finite();
    if (property == "abelian-by-finite") return abelian_by_finite();
    if (property == "central-by-finite") return central_by_finite();
    if (property == "completely-reducible") return completely_reducible();
    throw InputError("unknown property '" + property + "'");
  }

  const std::map<std::string, double>& timings() const { return timings_; }

 private:
  using Clock = std::chrono::steady_clock;
  static Clock::time_point clock() { return Clock::now(); }
  void time(const std::string& phase, Clock::time_point start) {
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    timings_[phase] += s;
    if (current_) current_->timings[phase] += s;
  }

  Decision guarded(const std::string& property, const std::function<void(Decision&)>& body) {
    Decision d;
    d.property = property;
    current_ = &d;
    try {
      body(d);
    } catch (const ImageTooLarge& e) {
      d.verdict = Verdict::Undecided;
      d.reason = "image-too-large";
      d.detail = e.what();
      d.certificate["partial_count"] = e.partial_count;
      d.certificate["cap"] = e.cap;
    } catch (const WHomUnavailable& e) {
      d.verdict = Verdict::Undecided;
      d.reason = "whom-unavailable";
      d.detail = e.what();
    } catch (...) {
      current_ = nullptr;
      throw;
    }
    current_ = nullptr;
    if (psi_) d.certificate["congruence"] = whom_json();
    if (G_) {
      Presentation P(*G_);
      d.certificate["image"] = {{"order", G_->order()},
                                {"generators", G_->rank()},
                                {"relators", P.relator_count()},
                                {"relators_verified", true},
                                {"cap", opt_.cap}};
    }
    return d;
  }

  nlohmann::json whom_json() const {
    const auto& c = psi_->cert;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& chk : c.checks) checks.push_back({{"name", chk.name}, {"holds", chk.holds}});
    nlohmann::json j{{"variant", psi_->variant}, {"p", psi_->p},        {"target", psi_->target->describe()},
                     {"clause", c.clause},       {"checks", checks},    {"mu", c.mu.get_str()}};
    if (!psi_->point.empty()) j["point"] = psi_->point;
    if (!psi_->factor.empty()) j["factor"] = psi_->factor;
    if (!psi_->reduced_poly.empty()) j["reduced_poly"] = psi_->reduced_poly;
    if (c.disc) j["disc"] = c.disc->get_str();
    if (c.cyclotomic) j["cyclotomic"] = *c.cyclotomic;
    if (!c.mu_at_point.empty()) j["mu_at_point"] = c.mu_at_point;
    return j;
  }

  void fill_kernel(Decision& d, bool complete) {
    nlohmann::json j{{"generators", K_.size()}, {"complete", complete}};
    if (stream_) {
      const auto& s = stream_->stats();
      j["relators_evaluated"] = s.relators;
      j["before_dedup"] = s.relators - s.trivial;
      j["after_dedup"] = s.emitted;
    }
    d.certificate["kernel"] = j;
  }

  bool out_of_scope(Decision& d) {
    if (characteristic() == 0) return false;
    d.verdict = Verdict::Undecided;
    d.reason = "out-of-method-scope";
    d.detail = "the criterion is implemented for characteristic zero only";
    return true;
  }

  bool small_characteristic_failure(Decision& d) {
    if (!whom().small_characteristic()) return false;
    const auto& K = kernel();
    const bool ok = check_small_characteristic(K, characteristic());
    d.certificate["small_characteristic_check"] = ok;
    if (ok) return false;
    d.verdict = Verdict::Undecided;
    d.reason = "whom-unavailable";
    d.detail = "W-homomorphism unavailable: kernel generators are not all " +
               std::string(characteristic() == 0 ? "unipotent" : "diagonalizable");
    return true;
  }

  std::vector<Matrix<E>> S_;
  DecideOptions opt_;
  std::unique_ptr<WHomomorphism<E>> psi_;
  std::unique_ptr<EnumeratedGroup> G_;
  std::unique_ptr<KernelStream<E>> stream_;
  std::vector<Matrix<E>> K_;
  std::map<std::string, double> timings_;
  Decision* current_ = nullptr;
};

}  // namespace tits
