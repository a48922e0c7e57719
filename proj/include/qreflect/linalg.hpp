#pragma once

#include <vector>

#include "qreflect/exactnum.hpp"

namespace qreflect {
namespace linalg {

using num::ExactScalar;

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static DenseMatrix identity(long n) {
    DenseMatrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  S& operator()(long r, long c) { return a_[r * cols_ + c]; }
  const S& operator()(long r, long c) const { return a_[r * cols_ + c]; }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.cols_ != y.rows_) throw DimensionMismatch("matrix product shape");
    DenseMatrix r(x.rows_, y.cols_);
    for (long i = 0; i < x.rows_; ++i)
      for (long k = 0; k < x.cols_; ++k) {
        const S& v = x(i, k);
        if (is_zero_entry(v)) continue;
        for (long j = 0; j < y.cols_; ++j) r(i, j) += v * y(k, j);
      }
    return r;
  }
  friend DenseMatrix operator+(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw DimensionMismatch("matrix sum shape");
    DenseMatrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }
  friend DenseMatrix operator-(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw DimensionMismatch("matrix diff shape");
    DenseMatrix r = x;
    for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= y.a_[i];
    return r;
  }
  friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  DenseMatrix scaled(const S& c) const {
    DenseMatrix r = *this;
    for (auto& v : r.a_) v = v * c;
    return r;
  }

  DenseMatrix transpose() const {
    DenseMatrix r(cols_, rows_);
    for (long i = 0; i < rows_; ++i)
      for (long j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  // Gauss-Jordan with exact division.  Throws SingularPartialTranspose when no
  // pivot exists (callers invert partial transposes, hence the error name).
  DenseMatrix inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
    long n = rows_;
    DenseMatrix m = *this;
    DenseMatrix inv = identity(n);
    for (long col = 0; col < n; ++col) {
      long piv = -1;
      for (long r = col; r < n; ++r)
        if (!is_zero_entry(m(r, col))) {
          piv = r;
          break;
        }
      if (piv < 0) throw SingularPartialTranspose();
      if (piv != col) {
        for (long j = 0; j < n; ++j) {
          std::swap(m(piv, j), m(col, j));
          std::swap(inv(piv, j), inv(col, j));
        }
      }
      S d = m(col, col);
      for (long j = 0; j < n; ++j) {
        m(col, j) = m(col, j) / d;
        inv(col, j) = inv(col, j) / d;
      }
      for (long r = 0; r < n; ++r) {
        if (r == col || is_zero_entry(m(r, col))) continue;
        S f = m(r, col);
        for (long j = 0; j < n; ++j) {
          m(r, j) -= f * m(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

 private:
  static bool is_zero_entry(const S& v) {
    if constexpr (requires { v.is_zero(); })
      return v.is_zero();
    else
      return false;
  }

  long rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

// Exact rank via Bareiss fraction-free elimination.  Denominators are cleared
// row by row first, so the elimination runs over integers with exact division
// at every step.
long bareiss_rank(const DenseMatrix<ExactScalar>& m);

// Right null space basis via reduced row echelon form (exact division).
std::vector<std::vector<ExactScalar>> nullspace(const DenseMatrix<ExactScalar>& m);

}  // namespace linalg
}  // namespace qreflect
