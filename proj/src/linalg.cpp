#include "mapvir/linalg.hpp"

#include <utility>

#include "mapvir/errors.hpp"

namespace mapvir {

Vector Echelon::reduce(Vector v) const {
  for (size_t r = 0; r < rows.size(); ++r) {
    Scalar f = v[pivots[r]];
    if (is_zero(f)) continue;
    for (size_t c = 0; c < cols; ++c)
      if (!is_zero(rows[r][c])) v[c] -= f * rows[r][c];
  }
  return v;
}

bool Echelon::contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

std::vector<size_t> Echelon::free_columns() const {
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<size_t> out;
  for (size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) out.push_back(c);
  return out;
}

Echelon row_reduce(Matrix m, size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw ComputationError("row_reduce: ragged matrix");
  Echelon out;
  out.cols = cols;
  size_t lead = 0;
  for (size_t c = 0; c < cols && lead < m.size(); ++c) {
    size_t pivot = lead;
    while (pivot < m.size() && is_zero(m[pivot][c])) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[lead], m[pivot]);
    Scalar inv = 1 / m[lead][c];
    for (size_t k = c; k < cols; ++k) m[lead][k] *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == lead || is_zero(m[r][c])) continue;
      Scalar f = m[r][c];
      for (size_t k = c; k < cols; ++k)
        if (!is_zero(m[lead][k])) m[r][k] -= f * m[lead][k];
    }
    out.pivots.push_back(c);
    ++lead;
  }
  m.resize(lead);
  out.rows = std::move(m);
  return out;
}

size_t rank(const Matrix& m, size_t cols) { return row_reduce(m, cols).rank(); }

Matrix kernel(const Matrix& m, size_t cols) {
  Echelon e = row_reduce(m, cols);
  Matrix basis;
  for (size_t free : e.free_columns()) {
    Vector v(cols);
    v[free] = 1;
    for (size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Scalar determinant(Matrix m) {
  size_t n = m.size();
  Scalar det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = c;
    while (pivot < n && is_zero(m[pivot][c])) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      if (is_zero(m[r][c])) continue;
      Scalar f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Vector matvec(const Matrix& m, const Vector& v) {
  Vector out(m.size());
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < v.size(); ++c)
      if (!is_zero(v[c]) && !is_zero(m[r][c])) out[r] += m[r][c] * v[c];
  return out;
}

bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

}  // namespace mapvir
