#include "tits/ff_matrix.hpp"

#include <utility>

namespace tits {

FFMatrix FFMatrix::operator*(const FFMatrix& o) const {
  FFMatrix r(f_, n_);
  const FiniteField& F = *f_;
  if (F.degree() == 1) {
    const std::uint64_t p = F.p();
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        std::uint64_t acc = 0;
        for (int k = 0; k < n_; ++k) {
          acc += std::uint64_t{(*this)(i, k)} * o(k, j);
          if (acc >= (std::uint64_t{1} << 62)) acc %= p;
        }
        r.at(i, j) = static_cast<std::uint32_t>(acc % p);
      }
    return r;
  }
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::uint32_t acc = 0;
      for (int k = 0; k < n_; ++k) acc = F.add(acc, F.mul((*this)(i, k), o(k, j)));
      r.at(i, j) = acc;
    }
  return r;
}

FFMatrix FFMatrix::inverse() const {
  const FiniteField& F = *f_;
  FFMatrix a = *this, r = identity(f_, n_);
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (piv < n_ && a(piv, c) == 0) ++piv;
    if (piv == n_) throw MathError("singular matrix over a finite field");
    if (piv != c)
      for (int j = 0; j < n_; ++j) {
        std::swap(a.at(piv, j), a.at(c, j));
        std::swap(r.at(piv, j), r.at(c, j));
      }
    const std::uint32_t inv = F.inv(a(c, c));
    for (int j = 0; j < n_; ++j) {
      a.at(c, j) = F.mul(a(c, j), inv);
      r.at(c, j) = F.mul(r(c, j), inv);
    }
    for (int i = 0; i < n_; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const std::uint32_t m = a(i, c);
      for (int j = 0; j < n_; ++j) {
        a.at(i, j) = F.sub(a(i, j), F.mul(m, a(c, j)));
        r.at(i, j) = F.sub(r(i, j), F.mul(m, r(c, j)));
      }
    }
  }
  return r;
}

bool FFMatrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::string FFMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < n_; ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < n_; ++j) {
      if (j) s += ", ";
      s += f_->element_str((*this)(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace tits
