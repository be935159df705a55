#pragma once

#include <initializer_list>
#include <optional>

#include "cubiclat/numth.hpp"

namespace cubiclat {

template <typename T>
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(size_t r, size_t c) : r_(r), c_(c), a_(r * c) {}
  Mat(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
      if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  Mat transposed() const {
    Mat m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Mat operator*(const Mat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix product shape mismatch");
    Mat m(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t k = 0; k < c_; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
      }
    return m;
  }

  Mat operator-() const {
    Mat m(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
  }

  bool is_symmetric() const {
    if (r_ != c_) return false;
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = i + 1; j < c_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  std::vector<T> row(size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }

  void swap_rows(size_t i, size_t j) {
    for (size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(size_t i, size_t j) {
    for (size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }
  // row i += f * row j
  void add_row(size_t i, size_t j, const T& f) {
    for (size_t k = 0; k < c_; ++k) (*this)(i, k) += f * (*this)(j, k);
  }
  void add_col(size_t i, size_t j, const T& f) {
    for (size_t k = 0; k < r_; ++k) (*this)(k, i) += f * (*this)(k, j);
  }
  void scale_row(size_t i, const T& f) {
    for (size_t k = 0; k < c_; ++k) (*this)(i, k) *= f;
  }

 private:
  size_t r_, c_;
  std::vector<T> a_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

QMat to_rational(const IMat& m);
// Requires every entry integral.
IMat to_integral(const QMat& m);

// Exact determinant (Bareiss fraction-free elimination).
Int det(const IMat& m);
Rat det(const QMat& m);

// Gaussian inverse; throws std::invalid_argument on singular input.
QMat inverse(const QMat& m);

// u * m * v = d, u and v unimodular, d diagonal with d_1 | d_2 | ... >= 0.
// Deterministic: pivot is the minimal nonzero absolute value, ties broken by
// lowest row then column index.
struct SmithResult {
  IMat d, u, v;
  std::vector<Int> diagonal() const;  // nonzero entries, in order
};
SmithResult smith_normal_form(const IMat& m);

// Rows form a basis of {x : m x^T = 0} (right kernel); saturated by construction.
IMat kernel_basis(const IMat& m);

// Full-rank basis of the lattice spanned by the rows of m.
IMat row_lattice_basis(const IMat& m);

// Rational solution x of x * m = rhs (m full row rank), if one exists.
std::optional<QVec> solve_left(const QMat& m, const QVec& rhs);

IMat block_diag(const IMat& a, const IMat& b);

// v * m for a row vector v.
template <typename T>
std::vector<T> vec_mat(const std::vector<T>& v, const Mat<T>& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vec_mat shape mismatch");
  std::vector<T> out(m.cols());
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot shape mismatch");
  T s = T(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace cubiclat
