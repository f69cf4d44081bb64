#pragma once
// Dense matrices over GF(p^k) and exact Gaussian elimination.

#include <cstddef>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace fermatfree {

using gf::Code;
using gf::Field;

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Code& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Code operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.field_ == b.field_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Code> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw Error(ErrorKind::SpecMismatch, "matrix fields differ");
  if (a.cols() != b.rows()) throw Error(ErrorKind::DegreeMismatch, "matrix shapes do not compose");
  const Field& f = a.field();
  Matrix c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Code x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(l, j)));
    }
  return c;
}

struct Echelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline Echelon row_reduce(Matrix m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    const Code scale = f.inv(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      const Code factor = m(i, col);
      if (factor == 0) continue;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

/// Rank by forward elimination only.
inline std::size_t rank(Matrix m) {
  const Field& f = m.field();
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    const Code scale = f.inv(m(row, col));
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      const Code factor = m(i, col);
      if (factor == 0) continue;
      const Code c = f.mul(factor, scale);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(c, m(row, j)));
    }
    ++row;
  }
  return row;
}

/// Basis of the right kernel, one vector per non-pivot column in ascending
/// column order; the vector for free column j has a 1 in position j.
inline std::vector<std::vector<Code>> kernel_basis(const Matrix& m) {
  const Field& f = m.field();
  const Echelon ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::vector<Code>> basis;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Code> v(m.cols(), 0);
    v[free_col] = f.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = f.neg(ech.reduced(r, free_col));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace fermatfree
