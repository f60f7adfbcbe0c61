#include "wallrig/linalg.hpp"

#include <utility>

#include "wallrig/error.hpp"

namespace wallrig {

namespace {

std::vector<std::vector<mpz_class>> integer_rows(const RationalMatrix& rows, int n_cols) {
  std::vector<std::vector<mpz_class>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_cols) throw Error(ErrorCode::SizeMismatch, "ragged matrix");
    mpz_class l = 1;
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> r(n_cols);
    for (int j = 0; j < n_cols; ++j) r[j] = row[j].get_num() * (l / row[j].get_den());
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

int exact_rank(const RationalMatrix& rows, int n_cols) {
  auto a = integer_rows(rows, n_cols);
  const int m = static_cast<int>(a.size());
  int rank = 0;
  mpz_class prev = 1;
  for (int col = 0; col < n_cols && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i) {
      if (sgn(a[i][col]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int i = rank + 1; i < m; ++i) {
      for (int j = col + 1; j < n_cols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<RationalVector> kernel_basis(const RationalMatrix& rows, int n_cols) {
  RationalMatrix a = rows;
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n_cols) throw Error(ErrorCode::SizeMismatch, "ragged matrix");
  }
  const int m = static_cast<int>(a.size());
  std::vector<int> pivot_cols;
  int r = 0;
  for (int col = 0; col < n_cols && r < m; ++col) {
    int piv = -1;
    for (int i = r; i < m; ++i) {
      if (sgn(a[i][col]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    mpq_class inv = 1 / a[r][col];
    for (int j = col; j < n_cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || sgn(a[i][col]) == 0) continue;
      mpq_class f = a[i][col];
      for (int j = col; j < n_cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(col);
    ++r;
  }
  std::vector<char> is_pivot(n_cols, 0);
  for (int c : pivot_cols) is_pivot[c] = 1;
  std::vector<RationalVector> basis;
  for (int free = 0; free < n_cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(n_cols);
    v[free] = 1;
    for (int i = 0; i < r; ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

RationalVector multiply(const RationalMatrix& rows, const RationalVector& x) {
  RationalVector out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != x.size()) throw Error(ErrorCode::SizeMismatch, "matrix-vector size mismatch");
    mpq_class s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += row[j] * x[j];
    out.push_back(s);
  }
  return out;
}

}  // namespace wallrig
