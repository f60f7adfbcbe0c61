#pragma once

#include <vector>

#include <gmpxx.h>

namespace wallrig {

using RationalVector = std::vector<mpq_class>;
using RationalMatrix = std::vector<RationalVector>;  // row-major, rectangular

/// Exact rank: rows are scaled to integers, then fraction-free (Bareiss)
/// elimination runs over mpz_class.
int exact_rank(const RationalMatrix& rows, int n_cols);

/// Kernel basis from the reduced row echelon form: one vector per free
/// column, with a 1 in that column.
std::vector<RationalVector> kernel_basis(const RationalMatrix& rows, int n_cols);

/// Matrix-vector product.
RationalVector multiply(const RationalMatrix& rows, const RationalVector& x);

}  // namespace wallrig
