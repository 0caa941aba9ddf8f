#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tits/errors.hpp"

namespace tits {

/// Dense square matrix over a field element type E, row-major. Vectors act on the
/// left (v -> v*g) throughout the library.
template <class E>
class Matrix {
 public:
  using Field = typename E::Field;
  using Element = E;

  Matrix() = default;
  Matrix(const Field* f, int n) : f_(f), n_(n), a_(static_cast<std::size_t>(n) * n, f->zero()) {}
  Matrix(const Field* f, int n, std::vector<E> entries) : f_(f), n_(n), a_(std::move(entries)) {
    if (a_.size() != static_cast<std::size_t>(n) * n) throw InputError("matrix entry count does not match dimension");
  }

  static Matrix identity(const Field* f, int n) { return scalar(f, n, f->one()); }
  static Matrix scalar(const Field* f, int n, const E& c) {
    Matrix m(f, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
  }

  const Field* field() const { return f_; }
  int n() const { return n_; }
  const E& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  E& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<E>& entries() const { return a_; }
  std::vector<E> row(int i) const { return {a_.begin() + i * n_, a_.begin() + (i + 1) * n_}; }

  bool is_zero() const {
    for (const auto& e : a_)
      if (!e.is_zero()) return false;
    return true;
  }
  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
  }

  Matrix operator+(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix r = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& e : r.a_) e = -e;
    return r;
  }
  Matrix operator*(const E& s) const {
    Matrix r = *this;
    for (auto& e : r.a_) e = e * s;
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    Matrix r(f_, n_);
    for (int i = 0; i < n_; ++i) {
      for (int k = 0; k < n_; ++k) {
        const E& x = (*this)(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
          const E& y = o(k, j);
          if (y.is_zero()) continue;
          r.at(i, j) = r(i, j) + x * y;
        }
      }
    }
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Gauss-Jordan inverse; throws MathError when singular.
  Matrix inverse() const {
    Matrix a = *this, r = identity(f_, n_);
    for (int c = 0; c < n_; ++c) {
      int piv = -1;
      for (int i = c; i < n_; ++i)
        if (!a(i, c).is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) throw MathError("singular matrix");
      if (piv != c) {
        a.swap_rows(piv, c);
        r.swap_rows(piv, c);
      }
      const E inv = a(c, c).inv();
      for (int j = 0; j < n_; ++j) {
        a.at(c, j) = a(c, j) * inv;
        r.at(c, j) = r(c, j) * inv;
      }
      for (int i = 0; i < n_; ++i) {
        if (i == c || a(i, c).is_zero()) continue;
        const E m = a(i, c);
        for (int j = 0; j < n_; ++j) {
          if (!a(c, j).is_zero()) a.at(i, j) = a(i, j) - m * a(c, j);
          if (!r(c, j).is_zero()) r.at(i, j) = r(i, j) - m * r(c, j);
        }
      }
    }
    return r;
  }

  bool is_invertible() const {
    try {
      (void)inverse();
      return true;
    } catch (const MathError&) {
      return false;
    }
  }

  Matrix pow(long e) const {
    Matrix base = e < 0 ? inverse() : *this;
    if (e < 0) e = -e;
    Matrix acc = identity(f_, n_);
    while (e > 0) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      s += i ? ", [" : "[";
      for (int j = 0; j < n_; ++j) {
        if (j) s += ", ";
        s += (*this)(i, j).str();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  void swap_rows(int i, int j) {
    for (int k = 0; k < n_; ++k) std::swap(a_[static_cast<std::size_t>(i) * n_ + k], a_[static_cast<std::size_t>(j) * n_ + k]);
  }

  const Field* f_ = nullptr;
  int n_ = 0;
  std::vector<E> a_;
};

/// h^-1 * a * h
template <class E>
Matrix<E> conjugate(const Matrix<E>& a, const Matrix<E>& h) {
  return h.inverse() * a * h;
}

template <class E>
Matrix<E> conjugate(const Matrix<E>& a, const Matrix<E>& h, const Matrix<E>& h_inv) {
  return h_inv * a * h;
}

template <class E>
bool commute(const Matrix<E>& a, const Matrix<E>& b) {
  return a * b == b * a;
}

}  // namespace tits
