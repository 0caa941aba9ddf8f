#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tits/errors.hpp"
#include "tits/ff_matrix.hpp"
#include "tits/finite_field.hpp"

namespace tits {

/// Word in the generators: letter +(i+1) is generator i, -(i+1) its inverse.
using Word = std::vector<std::int32_t>;

Word free_reduce(const Word& w);
Word inverse_word(const Word& w);

/// Breadth-first enumeration of the group generated by finite-field matrices. Elements are
/// numbered in discovery order (0 is the identity), so each BFS layer is a contiguous
/// index range. Letters 0..r-1 multiply on the right by a generator, letters r..2r-1 by
/// the inverse of generator letter-r.
class EnumeratedGroup {
 public:
  static constexpr std::uint64_t kDefaultCap = 1000000;

  /// Throws ImageTooLarge once more than `cap` elements have been found.
  static EnumeratedGroup enumerate(const std::vector<FFMatrix>& gens, std::uint64_t cap = kDefaultCap);

  std::uint32_t order() const { return count_; }
  int rank() const { return r_; }
  int n() const { return n_; }
  const FiniteField* field() const { return f_; }
  const std::vector<FFMatrix>& generators() const { return gens_; }

  FFMatrix element(std::uint32_t idx) const;
  std::optional<std::uint32_t> index_of(const FFMatrix& m) const;

  std::uint32_t edge(std::uint32_t u, int letter) const { return table_[static_cast<std::size_t>(u) * 2 * r_ + letter]; }
  std::uint32_t parent(std::uint32_t u) const { return parent_[u]; }
  /// Letter on the tree edge parent(u) -> u; -1 for the identity.
  int parent_letter(std::uint32_t u) const { return letter_[u]; }
  int layers() const { return static_cast<int>(layer_start_.size()) - 1; }
  std::uint32_t layer_begin(int d) const { return layer_start_[d]; }
  std::uint32_t layer_end(int d) const { return layer_start_[d + 1]; }
  int depth(std::uint32_t u) const;

  /// Tree path from the identity to u as a word in the generators.
  Word word(std::uint32_t u) const;
  /// Whether the positive edge u --g--> edge(u, g) belongs to the spanning tree.
  bool is_tree_edge(std::uint32_t u, int g) const;

  std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inverse(std::uint32_t a) const;
  /// Element reached from the identity by following w through the Cayley table.
  std::uint32_t walk(const Word& w, std::uint32_t start = 0) const;

 private:
  void store(const FFMatrix& m);
  std::uint64_t hash_at(std::uint32_t idx) const;
  std::uint64_t hash_codes(const std::vector<std::uint32_t>& c) const;
  bool equal_at(std::uint32_t idx, const std::vector<std::uint32_t>& c) const;
  std::optional<std::uint32_t> find(const std::vector<std::uint32_t>& c, std::uint64_t h) const;
  void insert_hash(std::uint32_t idx, std::uint64_t h);
  void grow_hash();

  const FiniteField* f_ = nullptr;
  int n_ = 0;
  int r_ = 0;
  int width_ = 1;  // bytes per stored entry
  std::uint32_t count_ = 0;
  std::vector<FFMatrix> gens_;
  std::vector<std::uint8_t> data_;
  std::vector<std::uint32_t> slots_;  // open addressing, value idx+1, 0 = empty
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::int16_t> letter_;
  std::vector<std::uint32_t> layer_start_;
};

/// Relators read off the Cayley graph: one per positive non-tree edge (u, g, v), namely
/// word(u) g word(v)^-1. Distinct edges give distinct words, so no further deduplication
/// of words is needed.
class Presentation {
 public:
  struct Edge {
    std::uint32_t u;
    int gen;
    std::uint32_t v;
  };

  explicit Presentation(const EnumeratedGroup& G) : G_(&G) {}

  int rank() const { return G_->rank(); }
  std::uint64_t relator_count() const {
    return static_cast<std::uint64_t>(G_->order()) * G_->rank() - (G_->order() - 1);
  }
  Word relator(const Edge& e) const;
  /// Non-tree edges leaving BFS layer d, in index order.
  std::vector<Edge> edges_in_layer(int d) const;
  void for_each_edge(const std::function<void(const Edge&)>& fn) const;
  std::vector<Word> relators() const;

 private:
  const EnumeratedGroup* G_;
};

/// Builds the presentation and checks that every relator walks back to the identity.
Presentation cayley_presentation(const EnumeratedGroup& G);

// Subgroups are lists of element indices.
std::vector<std::uint32_t> subgroup_closure(const EnumeratedGroup& G, const std::vector<std::uint32_t>& gens);
std::vector<std::uint32_t> normal_closure(const EnumeratedGroup& G, const std::vector<std::uint32_t>& x,
                                          const std::vector<std::uint32_t>& conj_gens);
/// Greedy generating set taken from the elements in the given order.
std::vector<std::uint32_t> small_generating_set(const EnumeratedGroup& G, const std::vector<std::uint32_t>& elements);

/// Derived series, starting from the subgroup generated by `gens`. Returns the orders.
std::vector<std::uint32_t> derived_series_orders(const EnumeratedGroup& G, const std::vector<std::uint32_t>& gens);
bool is_solvable_subgroup(const EnumeratedGroup& G, const std::vector<std::uint32_t>& gens);
bool is_solvable_finite(const EnumeratedGroup& G);
/// |G : solvable radical|, with the radical generated by all x whose normal closure is solvable.
std::uint64_t solvable_radical_index(const EnumeratedGroup& G);
std::vector<std::uint32_t> generator_indices(const EnumeratedGroup& G);

}  // namespace tits
