#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "folicalc/jet.hpp"

namespace folicalc {

/// Row-major dense matrix over an arbitrary scalar (double, complex, jets).
/// Eigen is used where only plain numbers are involved; this type carries the
/// jet-valued tensors that Eigen's scalar traits do not cover.
template <class T>
class Dense {
 public:
  Dense() = default;
  Dense(int rows, int cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

  static Dense identity(int n) {
    Dense m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  Dense transpose() const {
    Dense t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Dense operator*(const Dense& a, const Dense& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in product");
    Dense out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        T acc(0);
        for (int k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
        out(i, j) = acc;
      }
    return out;
  }

  friend Dense operator+(Dense a, const Dense& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in sum");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Dense operator-(Dense a, const Dense& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch in difference");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using RJetMatrix = Dense<RJet>;
using CJetMatrix = Dense<CJet>;

/// Gauss-Jordan inverse with partial pivoting on value magnitudes.
/// Throws std::domain_error when the best pivot falls below `tiny`.
template <class T>
Dense<T> inverse(Dense<T> a, double tiny = 1e-14) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
  Dense<T> inv = Dense<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = magnitude(a(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double m = magnitude(a(r, col));
      if (m > best) {
        best = m;
        pivot = r;
      }
    }
    if (best < tiny) throw std::domain_error("singular matrix");
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    const T scale = T(1) / a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) = a(col, c) * scale;
      inv(col, c) = inv(col, c) * scale;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

}  // namespace folicalc
