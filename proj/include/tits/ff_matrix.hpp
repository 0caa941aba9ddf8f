#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tits/finite_field.hpp"

namespace tits {

/// Dense square matrix over a finite field, entries stored as field codes.
class FFMatrix {
 public:
  FFMatrix() = default;
  FFMatrix(const FiniteField* f, int n) : f_(f), n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}
  FFMatrix(const FiniteField* f, int n, std::vector<std::uint32_t> a) : f_(f), n_(n), a_(std::move(a)) {}

  static FFMatrix identity(const FiniteField* f, int n) {
    FFMatrix m(f, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  const FiniteField* field() const { return f_; }
  int n() const { return n_; }
  std::uint32_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  std::uint32_t& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<std::uint32_t>& codes() const { return a_; }

  FFMatrix operator*(const FFMatrix& o) const;
  FFMatrix inverse() const;
  bool is_identity() const;
  friend bool operator==(const FFMatrix& a, const FFMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend bool operator!=(const FFMatrix& a, const FFMatrix& b) { return !(a == b); }

  std::string str() const;

 private:
  const FiniteField* f_ = nullptr;
  int n_ = 0;
  std::vector<std::uint32_t> a_;
};

}  // namespace tits
