#include "octa/linalg.hpp"

namespace octa {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::spec_mismatch, "matrix shape mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Elem& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
    }
  return r;
}

std::vector<Elem> Matrix::operator*(const std::vector<Elem>& v) const {
  if (cols_ != v.size()) throw Error(ErrorCode::spec_mismatch, "matrix/vector shape mismatch");
  std::vector<Elem> r(rows_, field_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) r[i] += (*this)(i, k) * v[k];
  return r;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t piv = row;
    while (piv < rows_ && (*this)(piv, col).is_zero()) ++piv;
    if (piv == rows_) continue;
    if (piv != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(row, j));
    Elem inv = (*this)(row, col).inv();
    for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      Elem factor = (*this)(i, col);
      if (factor.is_zero()) continue;
      for (std::size_t j = col; j < cols_; ++j) (*this)(i, j) -= factor * (*this)(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix m = *this;
  return m.rref().size();
}

std::vector<std::vector<Elem>> Matrix::kernel() const {
  Matrix m = *this;
  auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols_, field_.zero());
    v[free] = field_.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Elem Matrix::det() const {
  if (rows_ != cols_) throw Error(ErrorCode::spec_mismatch, "determinant of a non-square matrix");
  Matrix m = *this;
  Elem d = field_.one();
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t piv = col;
    while (piv < rows_ && m(piv, col).is_zero()) ++piv;
    if (piv == rows_) return field_.zero();
    if (piv != col) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(piv, j), m(col, j));
      d = -d;
    }
    d *= m(col, col);
    Elem inv = m(col, col).inv();
    for (std::size_t i = col + 1; i < rows_; ++i) {
      Elem factor = m(i, col) * inv;
      if (factor.is_zero()) continue;
      for (std::size_t j = col; j < cols_; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return d;
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorCode::singular_matrix, "non-square matrix");
  const std::size_t n = rows_;
  Matrix aug(field_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = field_.one();
  }
  auto pivots = aug.rref();
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(ErrorCode::singular_matrix, "matrix is not invertible");
  Matrix inv(field_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::optional<std::vector<Elem>> Matrix::solve(const std::vector<Elem>& b) const {
  Matrix aug(field_, rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_) = b[i];
  }
  auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  std::vector<Elem> x(cols_, field_.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, cols_);
  return x;
}

}  // namespace octa
