#pragma once

#include <cstddef>
#include <vector>

#include "involute/matrix.hpp"

namespace involute {

// A linear subspace of Q^ambient, stored by the reduced row-echelon form of
// its basis.  Equal subspaces have identical storage, so == is a syntactic
// comparison.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(std::size_t ambient, const std::vector<Vector>& generators) {
    Subspace s(ambient);
    if (generators.empty()) return s;
    const Echelon e = rref(Matrix::from_rows(generators, ambient));
    s.basis_ = e.reduced;
    s.pivots_ = e.pivots;
    return s;
  }

  static Subspace row_space(const Matrix& m) {
    Subspace s(m.cols());
    if (m.rows() == 0) return s;
    const Echelon e = rref(m);
    s.basis_ = e.reduced;
    s.pivots_ = e.pivots;
    return s;
  }

  static Subspace whole(std::size_t ambient) { return row_space(Matrix::identity(ambient)); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }

  // Basis vectors as rows, in canonical order.
  const Matrix& basis() const { return basis_; }
  Vector basis_vector(std::size_t i) const { return basis_.row_vector(i); }
  std::vector<Vector> basis_vectors() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_vector(i));
    return out;
  }
  // Basis vectors as columns (ambient x dim).
  Matrix basis_columns() const { return basis_.transpose(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Coordinates with respect to the canonical basis; valid only for members.
  Vector coordinates(const Vector& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("Subspace::coordinates: length mismatch");
    Vector c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  Vector from_coordinates(const Vector& c) const {
    if (c.size() != dim()) throw DimensionMismatch("Subspace::from_coordinates: length mismatch");
    Vector v(ambient_, Rational(0));
    for (std::size_t i = 0; i < dim(); ++i) axpy(v, c[i], basis_vector(i));
    return v;
  }

  bool contains(const Vector& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("Subspace::contains: length mismatch");
    Vector r = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      const Rational c = r[pivots_[i]];
      if (c != 0) axpy(r, -c, basis_vector(i));
    }
    return is_zero(r);
  }

  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i))) return false;
    return true;
  }

  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && basis_ == o.basis_; }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

// Null space of m as a canonical subspace of Q^{m.cols}.
inline Subspace kernel(const Matrix& m) { return Subspace::span(m.cols(), kernel_basis(m)); }

inline Subspace image(const Matrix& m) { return Subspace::row_space(m.transpose()); }

inline Subspace sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw DimensionMismatch("sum: ambient dimensions differ");
  return Subspace::row_space(vstack(u.basis(), v.basis()));
}

inline Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw DimensionMismatch("intersect: ambient dimensions differ");
  const std::size_t n = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace(n);
  // x = sum a_i u_i = sum b_j v_j  <=>  [U^T | -V^T] (a, b) = 0.
  const Matrix m = hstack(u.basis_columns(), v.basis_columns().scaled(-1));
  std::vector<Vector> gens;
  for (const auto& ab : kernel_basis(m)) {
    Vector x(n, Rational(0));
    for (std::size_t i = 0; i < u.dim(); ++i) axpy(x, ab[i], u.basis_vector(i));
    gens.push_back(std::move(x));
  }
  return Subspace::span(n, gens);
}

// {x : <x, s> = 0 for all s in u} under the standard dot product.
inline Subspace annihilator(const Subspace& u) {
  if (u.dim() == 0) return Subspace::whole(u.ambient_dim());
  return kernel(u.basis());
}

}  // namespace involute
