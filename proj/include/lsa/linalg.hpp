#pragma once

#include <optional>
#include <vector>

#include "lsa/scalar.hpp"

namespace lsa {

/// Dense matrix over the scalar fraction field. Doubles as the
/// basis-coordinate operator type (L_x, R_x, L*_x and friends).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, int width);
  static Matrix identity(int n, int width);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int width() const { return width_; }

  Scalar& at(int i, int j) { return data_[i * cols_ + j]; }
  const Scalar& at(int i, int j) const { return data_[i * cols_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Scalar& f) const;
  Matrix transpose() const;
  Matrix operator-() const;

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_skew() const;
  bool operator==(const Matrix& o) const;

  /// Exact determinant by fraction-free-ish Gaussian elimination.
  Scalar det() const;
  /// Exact inverse; throws Degenerate if det == 0 identically.
  Matrix inverse() const;
  int rank() const;

  /// Solves M x = rhs over the fraction field; nullopt when inconsistent.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& rhs) const;

 private:
  int rows_ = 0, cols_ = 0, width_ = 0;
  std::vector<Scalar> data_;
};

}  // namespace lsa
