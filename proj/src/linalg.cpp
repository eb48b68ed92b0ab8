#include "lsa/linalg.hpp"

#include <cassert>

namespace lsa {

Matrix::Matrix(int rows, int cols, int width)
    : rows_(rows), cols_(cols), width_(width),
      data_(static_cast<size_t>(rows) * cols, Scalar::zero(width)) {}

Matrix Matrix::identity(int n, int width) {
  Matrix m(n, n, width);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(width);
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Matrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  Matrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  assert(cols_ == o.rows_);
  Matrix out(rows_, o.cols_, width_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
    }
  return out;
}

Matrix Matrix::scaled(const Scalar& f) const {
  Matrix out = *this;
  for (auto& x : out.data_) x *= f;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_, width_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& x : out.data_) x = -x;
  return out;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& v) const {
  assert(static_cast<int>(v.size()) == cols_);
  std::vector<Scalar> out(rows_, Scalar::zero(width_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero() || v[j].is_zero()) continue;
      out[i] += at(i, j) * v[j];
    }
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool Matrix::is_skew() const {
  for (int i = 0; i < rows_; ++i) {
    if (!at(i, i).is_zero()) return false;
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != -at(j, i)) return false;
  }
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

// Reduces a copy to row echelon form, tracking the determinant sign factor.
// Returns (echelon matrix, pivot columns, det factor accumulated from swaps).
struct Echelon {
  Matrix m;
  std::vector<int> pivot_cols;
  bool sign_flip = false;
};

Echelon echelon_form(Matrix m) {
  Echelon out{m, {}, false};
  Matrix& a = out.m;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < a.rows(); ++i)
      if (!a.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(pivot, j), a.at(row, j));
      out.sign_flip = !out.sign_flip;
    }
    for (int i = row + 1; i < a.rows(); ++i) {
      if (a.at(i, col).is_zero()) continue;
      Scalar f = a.at(i, col) / a.at(row, col);
      for (int j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(row, j);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  return out;
}

}  // namespace

Scalar Matrix::det() const {
  assert(rows_ == cols_);
  if (rows_ == 0) return Scalar::one(width_);
  Echelon e = echelon_form(*this);
  if (static_cast<int>(e.pivot_cols.size()) < rows_) return Scalar::zero(width_);
  Scalar d = Scalar::one(width_);
  for (int i = 0; i < rows_; ++i) d *= e.m.at(i, i);
  return e.sign_flip ? -d : d;
}

Matrix Matrix::inverse() const {
  assert(rows_ == cols_);
  // Gauss-Jordan on [A | I]
  Matrix aug(rows_, 2 * cols_, width_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = Scalar::one(width_);
  }
  int row = 0;
  for (int col = 0; col < cols_; ++col) {
    int pivot = -1;
    for (int i = row; i < rows_; ++i)
      if (!aug.at(i, col).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw Degenerate("matrix has identically zero determinant");
    if (pivot != row)
      for (int j = 0; j < aug.cols(); ++j) std::swap(aug.at(pivot, j), aug.at(row, j));
    Scalar inv = aug.at(row, col).inverse();
    for (int j = 0; j < aug.cols(); ++j) aug.at(row, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == row || aug.at(i, col).is_zero()) continue;
      Scalar f = aug.at(i, col);
      for (int j = 0; j < aug.cols(); ++j) aug.at(i, j) -= f * aug.at(row, j);
    }
    ++row;
  }
  Matrix out(rows_, cols_, width_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = aug.at(i, cols_ + j);
  return out;
}

int Matrix::rank() const {
  return static_cast<int>(echelon_form(*this).pivot_cols.size());
}

std::optional<std::vector<Scalar>> Matrix::solve(const std::vector<Scalar>& rhs) const {
  assert(static_cast<int>(rhs.size()) == rows_);
  Matrix aug(rows_, cols_ + 1, width_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = rhs[i];
  }
  Echelon e = echelon_form(aug);
  // inconsistent iff a pivot lands in the rhs column
  for (int c : e.pivot_cols)
    if (c == cols_) return std::nullopt;
  std::vector<Scalar> x(cols_, Scalar::zero(width_));
  // back-substitution over pivot rows (free variables set to zero)
  for (int r = static_cast<int>(e.pivot_cols.size()) - 1; r >= 0; --r) {
    int pc = e.pivot_cols[r];
    Scalar acc = e.m.at(r, cols_);
    for (int j = pc + 1; j < cols_; ++j) acc -= e.m.at(r, j) * x[j];
    x[pc] = acc / e.m.at(r, pc);
  }
  return x;
}

}  // namespace lsa
