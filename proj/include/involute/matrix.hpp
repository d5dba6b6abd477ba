#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "involute/errors.hpp"
#include "involute/rational.hpp"

namespace involute {

// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("Matrix::from_rows: ragged rows");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionMismatch("Matrix::from_columns: ragged columns");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }
  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector apply(const Vector& x) const {
    if (x.size() != cols_) throw DimensionMismatch("Matrix::apply: vector length mismatch");
    Vector y(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (x[j] != 0 && (*this)(i, j) != 0) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("Matrix product: inner dimensions differ");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (o(k, j) != 0) r(i, j) += a * o(k, j);
      }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("Matrix sum: shapes differ");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("Matrix difference: shapes differ");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  Matrix scaled(const Rational& c) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= c;
    return r;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x == 0; });
  }

  bool operator==(const Matrix& o) const = default;

  // Rows [r0, r0+nr), columns [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  Matrix select_columns(const std::vector<std::size_t>& js) const {
    Matrix b(rows_, js.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < js.size(); ++k) b(i, k) = (*this)(i, js[k]);
    return b;
  }

  Matrix select_rows(const std::vector<std::size_t>& is) const {
    Matrix b(is.size(), cols_);
    for (std::size_t k = 0; k < is.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) b(k, j) = (*this)(is[k], j);
    return b;
  }

  void append_row(const Vector& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw DimensionMismatch("append_row: length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
  Matrix r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
  Matrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << to_string(m(i, j));
    os << "]\n";
  }
  return os;
}

struct Echelon {
  Matrix reduced;                   // reduced row-echelon form; zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row
};

// Gauss-Jordan elimination.  Pivots are taken at the leftmost nonzero
// column, so the output is the unique RREF of the row space.
inline Echelon rref(Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.block(0, 0, r, cols), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Eliminate on the smaller side.
  return m.rows() < m.cols() ? rref(m).pivots.size() : rref(m.transpose()).pivots.size();
}

// Basis of the null space {x : m x = 0} as the columns of the returned list.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  const std::size_t n = m.cols();
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

struct AffineSolution {
  Vector particular;
  std::vector<Vector> kernel;
};

// One solution of m x = rhs plus a kernel basis; throws Inconsistent when
// rhs is outside the column space.
inline AffineSolution solve_affine(const Matrix& m, const Vector& rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("solve_affine: rhs length differs from row count");
  const std::size_t n = m.cols();
  Matrix aug(m.rows(), n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n) = rhs[i];
  }
  const Echelon e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == n) throw Inconsistent("solve_affine: right-hand side not in column space");
  Vector x(n, Rational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, n);
  return {std::move(x), kernel_basis(m)};
}

// L with L * b = I, for b of full column rank.
inline Matrix left_inverse(const Matrix& b) {
  const std::size_t k = b.cols();
  const Echelon e = rref(b.transpose());
  if (e.pivots.size() != k) throw Inconsistent("left_inverse: columns are linearly dependent");
  // Rows e.pivots of b form an invertible k x k block.
  const Matrix sub = b.select_rows(e.pivots);
  Matrix aug = hstack(sub, Matrix::identity(k));
  const Echelon inv = rref(std::move(aug));
  Matrix subinv = inv.reduced.block(0, k, k, k);
  Matrix l(k, b.rows());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) l(i, e.pivots[j]) = subinv(i, j);
  return l;
}

inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return Matrix(0, 0);
  const Echelon e = rref(hstack(m, Matrix::identity(n)));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw Inconsistent("inverse: matrix is singular");
  return e.reduced.block(0, n, n, n);
}

}  // namespace involute
