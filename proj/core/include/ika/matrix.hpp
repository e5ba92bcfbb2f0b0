#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ika {

// Dense row-major matrix of doubles. Rows are sample points everywhere a
// matrix holds data (S x d, one point per row).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  bool all_finite() const;

  // Bit-exact comparison; used by round-trip and determinism tests.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using DataMatrix = Matrix;

// Symmetric matrix with bit-exact A(i,j) == A(j,i): the factory mirrors the
// upper triangle into the lower one and rejects non-finite entries.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : full_(n, n, 0.0) {}

  // Takes the upper triangle (including the diagonal) of a square matrix.
  static SymmetricMatrix from_upper(Matrix a);

  std::size_t order() const { return full_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return full_(i, j); }

  // Sets A(i,j) and A(j,i) together so the invariant cannot break.
  void set(std::size_t i, std::size_t j, double value) {
    full_(i, j) = value;
    full_(j, i) = value;
  }

  const Matrix& full() const { return full_; }
  double trace() const;

  friend bool operator==(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    return a.full_ == b.full_;
  }

 private:
  explicit SymmetricMatrix(Matrix&& full) : full_(std::move(full)) {}

  Matrix full_;
};

// Basic dense helpers shared by the solvers and estimators.
Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);
double squared_distance(std::span<const double> x, std::span<const double> y);
double dot(std::span<const double> x, std::span<const double> y);

// New matrix whose i-th row is x.row(indices[i]); indices may repeat.
Matrix select_rows(const Matrix& x, std::span<const std::size_t> indices);

}  // namespace ika
