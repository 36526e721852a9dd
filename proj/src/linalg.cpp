#include "qsv/linalg.hpp"

#include <utility>

namespace qsv {

Rref rref(Matrix m) {
  Rref out;
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    Scalar inv = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) {
      if (!m[r][j].is_zero()) m[r][j] = m[r][j] * inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank(); }

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), std::vector<Scalar>(m.size(), Scalar(0)));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

std::vector<std::vector<Scalar>> kernel(const Matrix& m, std::size_t columns) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(columns, false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(columns, Scalar(0));
    v[free] = Scalar(1);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qsv
