#pragma once

#include <cstddef>
#include <vector>

#include "qsv/scalar.hpp"

namespace qsv {

using Matrix = std::vector<std::vector<Scalar>>;

struct Rref {
  Matrix reduced;
  /// Pivot column of each nonzero row, in row order.
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

/// Exact reduced row echelon form; pivots are normalized to 1.
Rref rref(Matrix m);

std::size_t rank(const Matrix& m);

Matrix transpose(const Matrix& m);

/// Basis of { v : m v = 0 }, one vector per free column.
std::vector<std::vector<Scalar>> kernel(const Matrix& m, std::size_t columns);

}  // namespace qsv
