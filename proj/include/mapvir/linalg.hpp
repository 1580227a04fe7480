#pragma once

#include <cstddef>
#include <vector>

#include "mapvir/scalar.hpp"

namespace mapvir {

using Vector = std::vector<Scalar>;
using Matrix = std::vector<Vector>;  // row-major, every row the same length

/// Reduced row echelon form: nonzero rows only, pivot entries 1, pivot
/// columns cleared in every other row.
struct Echelon {
  size_t cols = 0;
  Matrix rows;
  std::vector<size_t> pivots;

  size_t rank() const { return rows.size(); }
  /// Subtracts the span component at pivot positions; zero iff v is in the span.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// Columns without a pivot, ascending.
  std::vector<size_t> free_columns() const;
};

Echelon row_reduce(Matrix m, size_t cols);
size_t rank(const Matrix& m, size_t cols);

/// Null space basis of m (m * x = 0), one vector per free column with that
/// free entry equal to 1 and the other free entries 0.
Matrix kernel(const Matrix& m, size_t cols);

/// Determinant by Gaussian elimination over Q.
Scalar determinant(Matrix m);

Vector matvec(const Matrix& m, const Vector& v);
bool is_zero_vector(const Vector& v);

}  // namespace mapvir
