#include "qreflect/linalg.hpp"

namespace qreflect {
namespace linalg {

long bareiss_rank(const DenseMatrix<ExactScalar>& m) {
  long rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Clear denominators row-wise; scaling a row by a positive integer does not
  // change the rank.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (long i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (long j = 0; j < cols; ++j) {
      mpz_class den = m(i, j).raw().get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
      l = l / g * den;
    }
    for (long j = 0; j < cols; ++j) {
      mpq_class scaled = m(i, j).raw() * mpq_class(l);
      scaled.canonicalize();
      a[i][j] = scaled.get_num();
    }
  }

  mpz_class prev = 1;
  long rank = 0;
  for (long col = 0; col < cols && rank < rows; ++col) {
    long piv = -1;
    for (long r = rank; r < rows; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (long r = rank + 1; r < rows; ++r) {
      for (long j = col + 1; j < cols; ++j) {
        mpz_class t = a[rank][col] * a[r][j] - a[r][col] * a[rank][j];
        mpz_divexact(a[r][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<std::vector<ExactScalar>> nullspace(const DenseMatrix<ExactScalar>& m) {
  long rows = m.rows(), cols = m.cols();
  DenseMatrix<ExactScalar> a = m;
  std::vector<long> pivot_col;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    ExactScalar d = a(r, c);
    for (long j = 0; j < cols; ++j) a(r, j) /= d;
    for (long i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      ExactScalar f = a(i, c);
      for (long j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(cols, false);
  for (long c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<ExactScalar>> basis;
  for (long free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<ExactScalar> v(cols);
    v[free] = ExactScalar(1);
    for (size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -a(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace linalg
}  // namespace qreflect
