#pragma once

#include <optional>
#include <vector>

#include "ainf/scalar.hpp"

namespace ainf {

// Dense rational matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  bool operator==(const Matrix& o) const = default;
  bool is_zero() const;

  // Stacks b below this matrix (column counts must agree).
  Matrix vstack(const Matrix& b) const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

// Exact rank by fraction-free (Bareiss) elimination after clearing row denominators.
size_t rank(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace ainf
