#pragma once

// Dense exact linear algebra over a Field.

#include <optional>
#include <vector>

#include "octa/fields.hpp"

namespace octa {

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);
  static Matrix identity(Field f, std::size_t n);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Elem& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  std::vector<Elem> operator*(const std::vector<Elem>& v) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// Basis of {x : A x = 0}, one vector per free column, each with a 1 in its
  /// free column (deterministic).
  std::vector<std::vector<Elem>> kernel() const;
  Elem det() const;
  /// Throws Error(singular_matrix).
  Matrix inverse() const;
  /// Some solution of A x = b, or empty when inconsistent.
  std::optional<std::vector<Elem>> solve(const std::vector<Elem>& b) const;

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

}  // namespace octa
