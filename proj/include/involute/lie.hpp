#pragma once

#include <string>
#include <vector>

#include "involute/subspace.hpp"

namespace involute {

// Real Lie algebra given by structure constants [e_i, e_j] = sum_k c(i,j,k) e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim, Rational(0)) {}

  std::size_t dim() const { return dim_; }
  Rational& c(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }

  // Sets [e_i, e_j] = v and [e_j, e_i] = -v.
  void set_bracket(std::size_t i, std::size_t j, const Vector& v) {
    for (std::size_t k = 0; k < dim_; ++k) {
      c(i, j, k) = v[k];
      c(j, i, k) = -v[k];
    }
  }

  Vector bracket(const Vector& x, const Vector& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("bracket: vector length differs from dim");
    Vector out(dim_, Rational(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j] == 0) continue;
        const Rational xy = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != 0) out[k] += xy * c(i, j, k);
      }
    }
    return out;
  }

  // Matrix of ad_x.
  Matrix ad(const Vector& x) const {
    Matrix m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      const Vector col = bracket(x, unit_vector(dim_, j));
      for (std::size_t k = 0; k < dim_; ++k) m(k, j) = col[k];
    }
    return m;
  }

  bool is_antisymmetric() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != -c(j, i, k)) return false;
    return true;
  }

  // Throws JacobiViolation naming the first failing basis triple.
  void check_jacobi() const {
    if (!is_antisymmetric()) throw JacobiViolation("structure constants are not antisymmetric");
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = j + 1; k < dim_; ++k) {
          const Vector ei = unit_vector(dim_, i), ej = unit_vector(dim_, j), ek = unit_vector(dim_, k);
          Vector s = bracket(ei, bracket(ej, ek));
          const Vector t2 = bracket(ej, bracket(ek, ei)), t3 = bracket(ek, bracket(ei, ej));
          for (std::size_t l = 0; l < dim_; ++l) s[l] += t2[l] + t3[l];
          if (!is_zero(s))
            throw JacobiViolation("Jacobi identity fails on basis triple (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
        }
  }

  // Gram matrix of the Killing form tr(ad_x ad_y).
  Matrix killing() const {
    std::vector<Matrix> ads;
    for (std::size_t i = 0; i < dim_; ++i) ads.push_back(ad(unit_vector(dim_, i)));
    Matrix g(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j) {
        Rational t = 0;
        for (std::size_t a = 0; a < dim_; ++a)
          for (std::size_t b = 0; b < dim_; ++b) t += ads[i](a, b) * ads[j](b, a);
        g(i, j) = g(j, i) = t;
      }
    return g;
  }

  // Structure constants of a matrix Lie algebra spanned by `basis`.
  static LieAlgebra from_matrices(const std::vector<Matrix>& basis) {
    const std::size_t d = basis.size();
    LieAlgebra g(d);
    if (d == 0) return g;
    const std::size_t sz = basis[0].rows() * basis[0].cols();
    Matrix cols(sz, d);
    auto flat = [](const Matrix& m) {
      Vector v;
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
      return v;
    };
    for (std::size_t k = 0; k < d; ++k) {
      const Vector v = flat(basis[k]);
      for (std::size_t r = 0; r < sz; ++r) cols(r, k) = v[r];
    }
    if (rank(cols) != d) throw InputError("from_matrices: basis is linearly dependent");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        const Matrix br = basis[i] * basis[j] - basis[j] * basis[i];
        Vector coeffs;
        try {
          coeffs = solve_affine(cols, flat(br)).particular;
        } catch (const Inconsistent&) {
          throw InputError("from_matrices: span is not closed under the commutator");
        }
        g.set_bracket(i, j, coeffs);
      }
    return g;
  }

 private:
  std::size_t dim_ = 0;
  Vector c_;
};

// Sylvester test on leading principal minors, via exact LDL^T pivots.
inline int definiteness(const Matrix& g) {
  const std::size_t n = g.rows();
  if (n == 0) return 0;
  Matrix m = g;
  bool pos = true, neg = true;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational d = m(k, k);
    if (d <= 0) pos = false;
    if (d >= 0) neg = false;
    if (d == 0) return 0;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rational f = m(i, k) / d;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return pos ? 1 : (neg ? -1 : 0);
}

// Restriction of a bilinear form to the span of the columns of `basis`.
inline Matrix restrict_form(const Matrix& form, const Matrix& basis) { return basis.transpose() * form * basis; }

// g = g0 ⊕ m with a ⊂ m maximal abelian, m = a ⊕ b, g0 = g_a ⊕ p.
// Subspace bases are stored as columns in g-coordinates; a keeps the order
// given by the caller, the others are canonical.
struct CartanDecomposition {
  LieAlgebra g;
  Matrix killing;
  Matrix g0, m, a, b, ga, p;

  std::size_t n() const { return a.cols(); }
  Vector a_vec(std::size_t i) const { return a.column(i); }
  Vector b_vec(std::size_t i) const { return b.column(i); }

  // Coordinates in the canonical basis of p of a vector of p.
  Vector p_coordinates(const Vector& x) const {
    const Subspace s = Subspace::span(g.dim(), columns(p));
    if (!s.contains(x)) throw BadDecomposition("element does not lie in p");
    return s.coordinates(x);
  }
  Vector b_coordinates(const Vector& x) const {
    const Subspace s = Subspace::span(g.dim(), columns(b));
    if (!s.contains(x)) throw BadDecomposition("element does not lie in b");
    return s.coordinates(x);
  }

  static std::vector<Vector> columns(const Matrix& m) {
    std::vector<Vector> out;
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.column(j));
    return out;
  }
};

namespace detail {

inline Subspace killing_complement(const Matrix& killing, const Subspace& inside, const Subspace& against) {
  if (against.dim() == 0) return inside;
  return intersect(inside, kernel(against.basis() * killing));
}

inline bool bracket_within(const LieAlgebra& g, const Subspace& u, const Subspace& v, const Subspace& target) {
  for (const auto& x : u.basis_vectors())
    for (const auto& y : v.basis_vectors())
      if (!target.contains(g.bracket(x, y))) return false;
  return true;
}

}  // namespace detail

// Builds and checks the decomposition from g0 and an ordered basis of a.
inline CartanDecomposition cartan_decomposition(const LieAlgebra& g, const std::vector<Vector>& g0_basis,
                                                const std::vector<Vector>& a_basis) {
  g.check_jacobi();
  const std::size_t d = g.dim();
  CartanDecomposition cd;
  cd.g = g;
  cd.killing = g.killing();
  const Subspace g0 = Subspace::span(d, g0_basis);
  const Subspace m = detail::killing_complement(cd.killing, Subspace::whole(d), g0);
  if (g0.dim() + m.dim() != d || sum(g0, m).dim() != d)
    throw BadDecomposition("g0 and its Killing complement do not span g");
  if (!detail::bracket_within(g, g0, g0, g0)) throw BadDecomposition("[g0, g0] is not contained in g0");
  if (!detail::bracket_within(g, g0, m, m)) throw BadDecomposition("[g0, m] is not contained in m");
  if (!detail::bracket_within(g, m, m, g0)) throw BadDecomposition("[m, m] is not contained in g0");
  if (definiteness(restrict_form(cd.killing, g0.basis_columns())) != -1 && g0.dim() > 0)
    throw BadDecomposition("Killing form is not negative definite on g0");
  if (definiteness(restrict_form(cd.killing, m.basis_columns())) != 1 && m.dim() > 0)
    throw BadDecomposition("Killing form is not positive definite on m");

  const Subspace a = Subspace::span(d, a_basis);
  if (a.dim() != a_basis.size()) throw BadDecomposition("a basis is linearly dependent");
  if (!m.contains(a)) throw BadDecomposition("a is not contained in m");
  if (!detail::bracket_within(g, a, a, Subspace(d))) throw BadDecomposition("a is not abelian");
  // Maximality: the centralizer of a in m is a.
  {
    Matrix stacked(0, d);
    for (const auto& x : a_basis) stacked = vstack(stacked, g.ad(x));
    const Subspace cm = intersect(m, kernel(stacked));
    if (cm != a) throw BadDecomposition("a is not maximal abelian in m");
  }
  const Subspace b = detail::killing_complement(cd.killing, m, a);
  Matrix stacked(0, d);
  for (const auto& x : a_basis) stacked = vstack(stacked, g.ad(x));
  const Subspace ga = a_basis.empty() ? g0 : intersect(g0, kernel(stacked));
  const Subspace p = detail::killing_complement(cd.killing, g0, ga);
  if (ga.dim() + p.dim() != g0.dim()) throw BadDecomposition("g0 is not g_a ⊕ p");

  cd.g0 = g0.basis_columns();
  cd.m = m.basis_columns();
  cd.a = Matrix::from_columns(a_basis, d);
  cd.b = b.basis_columns();
  cd.ga = ga.dim() ? ga.basis_columns() : Matrix(d, 0);
  cd.p = p.basis_columns();
  if (b.dim() == 0) cd.b = Matrix(d, 0);
  if (p.dim() == 0) cd.p = Matrix(d, 0);
  return cd;
}

// A ∈ a is accepted as regular when ad_A : b -> p is injective.
inline bool is_regular(const CartanDecomposition& cd, const Vector& a) {
  const std::size_t nb = cd.b.cols();
  if (nb == 0) return true;
  const Matrix img = cd.g.ad(a) * cd.b;
  return rank(img) == nb;
}

namespace builtin {

inline Matrix square(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> rs;
  std::size_t n = 0;
  for (auto r : rows) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    n = v.size();
    rs.push_back(std::move(v));
  }
  return Matrix::from_rows(rs, n);
}

// so(2) ⊕ {symmetric traceless} basis K, S, H of sl(2,R).
inline LieAlgebra sl2() {
  return LieAlgebra::from_matrices({square({{0, 1}, {-1, 0}}), square({{0, 1}, {1, 0}}), square({{1, 0}, {0, -1}})});
}

// Basis K12, K13, K23, S12, S13, S23, H1 = diag(1,-1,0), H2 = diag(0,1,-1).
inline LieAlgebra sl3() {
  return LieAlgebra::from_matrices({
      square({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}),
      square({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}),
      square({{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}),
      square({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}),
      square({{0, 0, 1}, {0, 0, 0}, {1, 0, 0}}),
      square({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}),
      square({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}),
      square({{0, 0, 0}, {0, 1, 0}, {0, 0, -1}}),
  });
}

// [e1,e2] = e3 and cyclic.
inline LieAlgebra su2() {
  LieAlgebra g(3);
  g.set_bracket(0, 1, unit_vector(3, 2));
  g.set_bracket(1, 2, unit_vector(3, 0));
  g.set_bracket(2, 0, unit_vector(3, 1));
  return g;
}

inline LieAlgebra abelian(std::size_t d) { return LieAlgebra(d); }

inline CartanDecomposition sl2_cartan() {
  return cartan_decomposition(sl2(), {unit_vector(3, 0)}, {unit_vector(3, 2)});
}

inline CartanDecomposition sl3_cartan() {
  return cartan_decomposition(sl3(), {unit_vector(8, 0), unit_vector(8, 1), unit_vector(8, 2)},
                              {unit_vector(8, 6), unit_vector(8, 7)});
}

}  // namespace builtin

}  // namespace involute
