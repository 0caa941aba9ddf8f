#include "tits/finite_image.hpp"

#include <algorithm>
#include <cstring>

namespace tits {

Word free_reduce(const Word& w) {
  Word out;
  for (auto l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

namespace {

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

void multiply_into(const FiniteField& F, int n, const std::vector<std::uint32_t>& a,
                   const std::vector<std::uint32_t>& b, std::vector<std::uint32_t>& out) {
  if (F.degree() == 1) {
    const std::uint64_t p = F.p();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::uint64_t acc = 0;
        for (int k = 0; k < n; ++k) {
          acc += std::uint64_t{a[i * n + k]} * b[k * n + j];
          if (acc >= (std::uint64_t{1} << 62)) acc %= p;
        }
        out[i * n + j] = static_cast<std::uint32_t>(acc % p);
      }
    return;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint32_t acc = 0;
      for (int k = 0; k < n; ++k) acc = F.add(acc, F.mul(a[i * n + k], b[k * n + j]));
      out[i * n + j] = acc;
    }
}

}  // namespace

std::uint64_t EnumeratedGroup::hash_codes(const std::vector<std::uint32_t>& c) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (auto x : c) h = mix(h ^ x) + 0x632be59bd9b4e019ULL;
  return h;
}

std::uint64_t EnumeratedGroup::hash_at(std::uint32_t idx) const { return hash_codes(element(idx).codes()); }

bool EnumeratedGroup::equal_at(std::uint32_t idx, const std::vector<std::uint32_t>& c) const {
  const std::size_t m = c.size();
  const std::uint8_t* p = data_.data() + static_cast<std::size_t>(idx) * m * width_;
  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t v = 0;
    std::memcpy(&v, p + i * width_, width_);
    if (v != c[i]) return false;
  }
  return true;
}

std::optional<std::uint32_t> EnumeratedGroup::find(const std::vector<std::uint32_t>& c, std::uint64_t h) const {
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t s = h & mask;; s = (s + 1) & mask) {
    const std::uint32_t v = slots_[s];
    if (v == 0) return std::nullopt;
    if (equal_at(v - 1, c)) return v - 1;
  }
}

void EnumeratedGroup::insert_hash(std::uint32_t idx, std::uint64_t h) {
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = h & mask;
  while (slots_[s] != 0) s = (s + 1) & mask;
  slots_[s] = idx + 1;
}

void EnumeratedGroup::grow_hash() {
  slots_.assign(slots_.size() * 2, 0);
  for (std::uint32_t i = 0; i < count_; ++i) insert_hash(i, hash_at(i));
}

void EnumeratedGroup::store(const FFMatrix& m) {
  const std::size_t off = data_.size();
  data_.resize(off + m.codes().size() * width_);
  for (std::size_t i = 0; i < m.codes().size(); ++i) std::memcpy(&data_[off + i * width_], &m.codes()[i], width_);
}

FFMatrix EnumeratedGroup::element(std::uint32_t idx) const {
  const std::size_t m = static_cast<std::size_t>(n_) * n_;
  std::vector<std::uint32_t> c(m, 0);
  const std::uint8_t* p = data_.data() + idx * m * width_;
  for (std::size_t i = 0; i < m; ++i) std::memcpy(&c[i], p + i * width_, width_);
  return FFMatrix(f_, n_, std::move(c));
}

std::optional<std::uint32_t> EnumeratedGroup::index_of(const FFMatrix& m) const {
  if (m.n() != n_) return std::nullopt;
  return find(m.codes(), hash_codes(m.codes()));
}

EnumeratedGroup EnumeratedGroup::enumerate(const std::vector<FFMatrix>& gens, std::uint64_t cap) {
  if (gens.empty()) throw InputError("cannot enumerate a group without generators");
  EnumeratedGroup G;
  G.f_ = gens[0].field();
  G.n_ = gens[0].n();
  G.r_ = static_cast<int>(gens.size());
  G.gens_ = gens;
  const std::uint64_t q = G.f_->order();
  G.width_ = q <= 256 ? 1 : q <= 65536 ? 2 : 4;
  G.slots_.assign(1024, 0);

  std::vector<std::vector<std::uint32_t>> letters;
  for (const auto& g : gens) letters.push_back(g.codes());
  for (const auto& g : gens) letters.push_back(g.inverse().codes());
  const int L = 2 * G.r_;

  const FFMatrix id = FFMatrix::identity(G.f_, G.n_);
  G.store(id);
  G.insert_hash(0, G.hash_codes(id.codes()));
  G.count_ = 1;
  G.parent_.push_back(0);
  G.letter_.push_back(-1);
  G.table_.resize(L);
  std::vector<std::uint32_t> starts{0};

  std::vector<std::uint32_t> cur, prod(id.codes().size());
  std::size_t depth = 0;
  for (std::uint32_t u = 0; u < G.count_; ++u) {
    while (depth + 1 < starts.size() && u >= starts[depth + 1]) ++depth;
    cur = G.element(u).codes();
    for (int l = 0; l < L; ++l) {
      multiply_into(*G.f_, G.n_, cur, letters[l], prod);
      const std::uint64_t h = G.hash_codes(prod);
      if (auto hit = G.find(prod, h)) {
        G.table_[static_cast<std::size_t>(u) * L + l] = *hit;
        continue;
      }
      if (G.count_ >= cap) throw ImageTooLarge(G.count_, cap);
      const std::uint32_t v = G.count_++;
      if (starts.size() == depth + 1) starts.push_back(v);
      const std::size_t off = G.data_.size();
      G.data_.resize(off + prod.size() * G.width_);
      for (std::size_t i = 0; i < prod.size(); ++i) std::memcpy(&G.data_[off + i * G.width_], &prod[i], G.width_);
      if (2 * static_cast<std::size_t>(G.count_) > G.slots_.size())
        G.grow_hash();
      else
        G.insert_hash(v, h);
      G.parent_.push_back(u);
      G.letter_.push_back(static_cast<std::int16_t>(l));
      G.table_.resize(static_cast<std::size_t>(G.count_) * L);
      G.table_[static_cast<std::size_t>(u) * L + l] = v;
    }
  }
  starts.push_back(G.count_);
  G.layer_start_ = std::move(starts);
  G.data_.shrink_to_fit();
  G.table_.shrink_to_fit();
  return G;
}

int EnumeratedGroup::depth(std::uint32_t u) const {
  auto it = std::upper_bound(layer_start_.begin(), layer_start_.end(), u);
  return static_cast<int>(it - layer_start_.begin()) - 1;
}

Word EnumeratedGroup::word(std::uint32_t u) const {
  Word w;
  while (u != 0) {
    const int l = letter_[u];
    w.push_back(l < r_ ? l + 1 : -(l - r_ + 1));
    u = parent_[u];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

bool EnumeratedGroup::is_tree_edge(std::uint32_t u, int g) const {
  const std::uint32_t v = edge(u, g);
  if (v != 0 && parent_[v] == u && letter_[v] == g) return true;
  return u != 0 && parent_[u] == v && letter_[u] == g + r_;
}

std::uint32_t EnumeratedGroup::walk(const Word& w, std::uint32_t start) const {
  std::uint32_t x = start;
  for (auto l : w) x = edge(x, l > 0 ? l - 1 : r_ - l - 1);
  return x;
}

std::uint32_t EnumeratedGroup::multiply(std::uint32_t a, std::uint32_t b) const {
  auto hit = index_of(element(a) * element(b));
  if (!hit) throw InternalError("product left the enumerated group");
  return *hit;
}

std::uint32_t EnumeratedGroup::inverse(std::uint32_t a) const { return walk(inverse_word(word(a))); }

Word Presentation::relator(const Edge& e) const {
  Word w = G_->word(e.u);
  w.push_back(e.gen + 1);
  Word tail = inverse_word(G_->word(e.v));
  w.insert(w.end(), tail.begin(), tail.end());
  return w;
}

std::vector<Presentation::Edge> Presentation::edges_in_layer(int d) const {
  std::vector<Edge> out;
  for (std::uint32_t u = G_->layer_begin(d); u < G_->layer_end(d); ++u)
    for (int g = 0; g < G_->rank(); ++g)
      if (!G_->is_tree_edge(u, g)) out.push_back({u, g, G_->edge(u, g)});
  return out;
}

void Presentation::for_each_edge(const std::function<void(const Edge&)>& fn) const {
  for (std::uint32_t u = 0; u < G_->order(); ++u)
    for (int g = 0; g < G_->rank(); ++g)
      if (!G_->is_tree_edge(u, g)) fn({u, g, G_->edge(u, g)});
}

std::vector<Word> Presentation::relators() const {
  std::vector<Word> out;
  for_each_edge([&](const Edge& e) { out.push_back(relator(e)); });
  return out;
}

Presentation cayley_presentation(const EnumeratedGroup& G) {
  Presentation P(G);
  std::uint64_t count = 0;
  P.for_each_edge([&](const Presentation::Edge& e) {
    ++count;
    if (G.walk(P.relator(e)) != 0) throw InternalError("Cayley relator does not evaluate to the identity");
  });
  if (count != P.relator_count()) throw InternalError("unexpected number of Cayley relators");
  return P;
}

namespace {

struct Sub {
  std::vector<std::uint32_t> gens;
  std::vector<std::uint32_t> elems;
  std::vector<char> member;
};

Sub closure_of(const EnumeratedGroup& G, std::vector<std::uint32_t> gens) {
  Sub H;
  H.member.assign(G.order(), 0);
  H.member[0] = 1;
  H.elems.push_back(0);
  std::vector<FFMatrix> mats;
  for (auto g : gens)
    if (g != 0) {
      H.gens.push_back(g);
      mats.push_back(G.element(g));
    }
  for (std::size_t i = 0; i < H.elems.size(); ++i) {
    const FFMatrix x = G.element(H.elems[i]);
    for (const auto& m : mats) {
      const std::uint32_t y = *G.index_of(x * m);
      if (!H.member[y]) {
        H.member[y] = 1;
        H.elems.push_back(y);
      }
    }
  }
  return H;
}

Sub normal_closure_sub(const EnumeratedGroup& G, const std::vector<std::uint32_t>& x,
                       const std::vector<std::uint32_t>& conj_gens) {
  Sub H = closure_of(G, x);
  std::vector<FFMatrix> cs, cinv;
  for (auto c : conj_gens) {
    cs.push_back(G.element(c));
    cinv.push_back(cs.back().inverse());
  }
  for (std::size_t i = 0; i < H.gens.size(); ++i) {
    const FFMatrix y = G.element(H.gens[i]);
    for (std::size_t j = 0; j < cs.size(); ++j) {
      const std::uint32_t z = *G.index_of(cinv[j] * y * cs[j]);
      if (!H.member[z]) {
        auto gens = H.gens;
        gens.push_back(z);
        H = closure_of(G, gens);
      }
    }
  }
  return H;
}

Sub derived_sub(const EnumeratedGroup& G, const std::vector<std::uint32_t>& gens) {
  std::vector<std::uint32_t> comms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const FFMatrix a = G.element(gens[i]);
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const FFMatrix b = G.element(gens[j]);
      const std::uint32_t c = *G.index_of(a.inverse() * b.inverse() * a * b);
      if (c != 0) comms.push_back(c);
    }
  }
  return normal_closure_sub(G, comms, gens);
}

}  // namespace

std::vector<std::uint32_t> subgroup_closure(const EnumeratedGroup& G, const std::vector<std::uint32_t>& gens) {
  return closure_of(G, gens).elems;
}

std::vector<std::uint32_t> normal_closure(const EnumeratedGroup& G, const std::vector<std::uint32_t>& x,
                                          const std::vector<std::uint32_t>& conj_gens) {
  return normal_closure_sub(G, x, conj_gens).elems;
}

std::vector<std::uint32_t> small_generating_set(const EnumeratedGroup& G, const std::vector<std::uint32_t>& elements) {
  std::vector<std::uint32_t> gens;
  Sub H = closure_of(G, gens);
  for (auto e : elements)
    if (!H.member[e]) {
      gens.push_back(e);
      H = closure_of(G, gens);
    }
  return gens;
}

std::vector<std::uint32_t> generator_indices(const EnumeratedGroup& G) {
  std::vector<std::uint32_t> out;
  for (int g = 0; g < G.rank(); ++g) out.push_back(G.edge(0, g));
  return out;
}

std::vector<std::uint32_t> derived_series_orders(const EnumeratedGroup& G, const std::vector<std::uint32_t>& gens) {
  Sub H = closure_of(G, gens);
  std::vector<std::uint32_t> orders{static_cast<std::uint32_t>(H.elems.size())};
  while (H.elems.size() > 1) {
    Sub D = derived_sub(G, H.gens);
    if (D.elems.size() == H.elems.size()) break;
    orders.push_back(static_cast<std::uint32_t>(D.elems.size()));
    H = std::move(D);
  }
  return orders;
}

bool is_solvable_subgroup(const EnumeratedGroup& G, const std::vector<std::uint32_t>& gens) {
  return derived_series_orders(G, gens).back() == 1;
}

bool is_solvable_finite(const EnumeratedGroup& G) { return is_solvable_subgroup(G, generator_indices(G)); }

std::uint64_t solvable_radical_index(const EnumeratedGroup& G) {
  const auto ggens = generator_indices(G);
  std::vector<FFMatrix> cs, cinv;
  for (auto c : ggens) {
    cs.push_back(G.element(c));
    cinv.push_back(cs.back().inverse());
  }
  std::vector<char> seen(G.order(), 0);
  Sub R = closure_of(G, {});
  for (std::uint32_t x = 1; x < G.order(); ++x) {
    if (seen[x]) continue;
    std::vector<std::uint32_t> cls{x};
    seen[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      const FFMatrix y = G.element(cls[i]);
      for (std::size_t j = 0; j < cs.size(); ++j) {
        const std::uint32_t z = *G.index_of(cinv[j] * y * cs[j]);
        if (!seen[z]) {
          seen[z] = 1;
          cls.push_back(z);
        }
      }
    }
    if (R.member[x]) continue;
    Sub N = normal_closure_sub(G, {x}, ggens);
    if (!is_solvable_subgroup(G, N.gens)) continue;
    auto gens = R.gens;
    gens.insert(gens.end(), N.gens.begin(), N.gens.end());
    R = closure_of(G, gens);
  }
  return G.order() / R.elems.size();
}

}  // namespace tits
