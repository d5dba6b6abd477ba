#pragma once

#include <map>
#include <utility>
#include <vector>

#include "involute/tableau.hpp"

namespace involute {

// C^{q,p} = A^(q-1) ⊗ Λ^p.  Cell coordinates are indexed (alpha, J) with
// alpha over the canonical basis of A^(q-1) and J over ExtBasis(n, p).
struct SpencerCell {
  int q = 0, p = 0;
  TensorLayout layout;  // b ⊗ S^q ⊗ Λ^p
  Subspace space;       // A^(q-1) inside b ⊗ S^q
  std::size_t dim = 0;

  std::size_t ext_size() const { return layout.ext.size(); }

  // Cell coordinates to the full tensor layout.
  Vector embed(const Vector& c) const {
    Vector out(layout.size(), Rational(0));
    const std::size_t nj = ext_size(), ns = layout.sym.size();
    for (std::size_t a = 0; a < space.dim(); ++a)
      for (std::size_t j = 0; j < nj; ++j) {
        const Rational& x = c[a * nj + j];
        if (x == 0) continue;
        const auto& bv = space.basis().row(a);
        for (std::size_t b = 0; b < layout.b_dim; ++b)
          for (std::size_t i = 0; i < ns; ++i)
            if (bv[b * ns + i] != 0) out[layout.index(b, i, j)] += x * bv[b * ns + i];
      }
    return out;
  }

  // Full tensor to cell coordinates; throws NotInImage when outside the cell.
  Vector restrict(const Vector& full) const {
    const std::size_t nj = ext_size(), ns = layout.sym.size();
    Vector c(dim, Rational(0));
    for (std::size_t j = 0; j < nj; ++j) {
      Vector slice(layout.b_dim * ns);
      for (std::size_t b = 0; b < layout.b_dim; ++b)
        for (std::size_t i = 0; i < ns; ++i) slice[b * ns + i] = full[layout.index(b, i, j)];
      if (!space.contains(slice)) throw NotInImage("element does not lie in the Spencer cell");
      const Vector sc = space.coordinates(slice);
      for (std::size_t a = 0; a < space.dim(); ++a) c[a * nj + j] = sc[a];
    }
    return c;
  }

  // Gram matrix of the cell basis under the induced inner product.
  Matrix gram() const {
    const std::size_t nj = ext_size(), ns = layout.sym.size(), m = space.dim();
    Matrix sg(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t c = a; c < m; ++c) {
        Rational s = 0;
        for (std::size_t b = 0; b < layout.b_dim; ++b)
          for (std::size_t i = 0; i < ns; ++i) {
            const Rational& x = space.basis()(a, b * ns + i);
            if (x != 0) s += x * space.basis()(c, b * ns + i) * layout.sym.norm2(i);
          }
        sg(a, c) = sg(c, a) = s;
      }
    Matrix g(dim, dim);
    const Rational ef = nj ? layout.ext.norm2(0) : Rational(1);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t j = 0; j < nj; ++j) g(a * nj + j, c * nj + j) = sg(a, c) * ef;
    return g;
  }
};

inline SpencerCell spencer_cell(const Tableau& t, int q, int p) {
  if (q < 0 || p < 0 || p > static_cast<int>(t.a_dim())) throw InputError("spencer_cell: bidegree out of range");
  SpencerCell c;
  c.q = q;
  c.p = p;
  c.layout = TensorLayout(t.a_dim(), t.b_dim(), q, p);
  c.space = t.prolongation(q - 1);
  c.dim = c.space.dim() * c.layout.ext.size();
  return c;
}

inline bool cell_exists(const Tableau& t, int q, int p) { return q >= 0 && p >= 0 && p <= static_cast<int>(t.a_dim()); }

inline std::size_t cell_dim(const Tableau& t, int q, int p) {
  if (!cell_exists(t, q, p)) return 0;
  return t.prolongation_dim(q - 1) * binomial(t.a_dim(), static_cast<std::size_t>(p));
}

// δ^{q,p} : C^{q,p} -> C^{q-1,p+1} in cell coordinates.  The image of each
// basis vector is checked to lie in the target cell.
inline Matrix spencer_delta(const Tableau& t, int q, int p) {
  if (!cell_exists(t, q, p)) return Matrix(0, 0);
  const SpencerCell src = spencer_cell(t, q, p);
  if (q == 0 || !cell_exists(t, q - 1, p + 1)) return Matrix(cell_dim(t, q - 1, p + 1), src.dim);
  const SpencerCell dst = spencer_cell(t, q - 1, p + 1);
  const Matrix full = koszul_delta_full(t.a_dim(), t.b_dim(), q, p);
  Matrix d(dst.dim, src.dim);
  for (std::size_t k = 0; k < src.dim; ++k) {
    const Vector img = dst.restrict(full.apply(src.embed(unit_vector(src.dim, k))));
    for (std::size_t r = 0; r < dst.dim; ++r) d(r, k) = img[r];
  }
  return d;
}

// Matrix adjoint of δ^{q,p} under the cell Gram matrices: G1^{-1} D^T G2.
inline Matrix spencer_delta_adjoint(const Tableau& t, int q, int p) {
  const Matrix d = spencer_delta(t, q, p);
  if (d.rows() == 0 || d.cols() == 0) return Matrix(d.cols(), d.rows());
  const Matrix g1 = spencer_cell(t, q, p).gram();
  const Matrix g2 = spencer_cell(t, q - 1, p + 1).gram();
  return inverse(g1) * d.transpose() * g2;
}

inline std::size_t cohomology_dim(const Tableau& t, int q, int p) {
  if (!cell_exists(t, q, p)) return 0;
  const Matrix d = spencer_delta(t, q, p);
  const std::size_t ker = d.cols() - (d.rows() ? rank(d) : 0);
  std::size_t below = 0;
  if (cell_exists(t, q + 1, p - 1)) {
    const Matrix e = spencer_delta(t, q + 1, p - 1);
    below = e.rows() && e.cols() ? rank(e) : 0;
  }
  if (below > ker) throw Error("cohomology_dim: image exceeds kernel; δ∘δ ≠ 0");
  return ker - below;
}

struct SpencerEntry {
  std::size_t dim_cell = 0;
  std::size_t rank_delta = 0;
  std::size_t h_dim = 0;
};

inline std::map<std::pair<int, int>, SpencerEntry> spencer_table(const Tableau& t, int q_max, int p_max) {
  std::map<std::pair<int, int>, SpencerEntry> out;
  const int pm = std::min<int>(p_max, static_cast<int>(t.a_dim()));
  for (int q = 0; q <= q_max; ++q)
    for (int p = 0; p <= pm; ++p) {
      SpencerEntry e;
      e.dim_cell = cell_dim(t, q, p);
      const Matrix d = spencer_delta(t, q, p);
      e.rank_delta = d.rows() && d.cols() ? rank(d) : 0;
      e.h_dim = cohomology_dim(t, q, p);
      out[{q, p}] = e;
    }
  return out;
}

struct TwoAcyclicity {
  bool acyclic = true;
  int q_from = 1, q_to = 0;
  std::vector<std::size_t> h_dims;  // H^{q,2} for q = q_from..q_to
};

// H^{q,2} = 0 for q = 1..q_cap (vacuous when n < 2).
inline TwoAcyclicity two_acyclicity(const Tableau& t, int q_cap) {
  if (q_cap < 1) throw InputError("two_acyclicity: q_cap must be at least 1");
  TwoAcyclicity r;
  r.q_to = q_cap;
  for (int q = 1; q <= q_cap; ++q) {
    const std::size_t h = t.a_dim() >= 2 ? cohomology_dim(t, q, 2) : 0;
    r.h_dims.push_back(h);
    if (h != 0) r.acyclic = false;
  }
  return r;
}

inline bool is_two_acyclic(const Tableau& t, int q_cap) { return two_acyclicity(t, q_cap).acyclic; }

struct HarmonicSplit {
  int q = 0, p = 0;
  Subspace exact;     // B^{q,p} = image δ^{q+1,p-1}
  Subspace harmonic;  // Ker δ ∩ Ker δ*
  Subspace coexact;   // B_{q,p} = image of the adjoint of δ^{q,p}
  Matrix sigma;       // inverse of δ on B_{q,p}: target cell coords -> cell coords (valid on B^{q-1,p+1})
};

inline HarmonicSplit harmonic_split(const Tableau& t, int q, int p) {
  if (!cell_exists(t, q, p)) throw InputError("harmonic_split: bidegree out of range");
  HarmonicSplit s;
  s.q = q;
  s.p = p;
  const SpencerCell cell = spencer_cell(t, q, p);
  const std::size_t dim = cell.dim;
  const Matrix g = cell.gram();
  const Matrix d = spencer_delta(t, q, p);

  if (cell_exists(t, q + 1, p - 1)) {
    const Matrix e = spencer_delta(t, q + 1, p - 1);
    s.exact = e.cols() ? image(e) : Subspace(dim);
    // Ker of the adjoint of e = Ker(e^T G).
    s.harmonic = e.cols() ? kernel(e.transpose() * g) : Subspace::whole(dim);
  } else {
    s.exact = Subspace(dim);
    s.harmonic = Subspace::whole(dim);
  }
  const Subspace zq = d.rows() ? kernel(d) : Subspace::whole(dim);
  s.harmonic = intersect(s.harmonic, zq);
  s.coexact = d.rows() ? image(spencer_delta_adjoint(t, q, p)) : Subspace(dim);

  // The three pieces are pairwise G-orthogonal and fill the cell.
  auto orth = [&](const Subspace& a, const Subspace& b) {
    if (a.dim() == 0 || b.dim() == 0) return true;
    return (a.basis() * g * b.basis().transpose()).is_zero();
  };
  if (s.exact.dim() + s.harmonic.dim() + s.coexact.dim() != dim)
    throw Error("harmonic_split: dimensions do not add up to the cell");
  if (!orth(s.exact, s.harmonic) || !orth(s.exact, s.coexact) || !orth(s.harmonic, s.coexact))
    throw Error("harmonic_split: pieces are not orthogonal");
  if (sum(s.exact, s.harmonic) != zq) throw Error("harmonic_split: Ker δ differs from B ⊕ H");

  // σ: solve δ(W c) = y on B_{q,p}.
  if (s.coexact.dim() > 0) {
    const Matrix w = s.coexact.basis_columns();
    const Matrix dw = d * w;
    const Matrix li = left_inverse(dw);
    s.sigma = w * li;
  } else {
    s.sigma = Matrix(dim, d.rows());
  }
  return s;
}

// The unique element of B_{q,p} with δ(result) = target; target is given in
// coordinates of C^{q-1,p+1}.
inline Vector sigma_apply(const Tableau& t, const HarmonicSplit& split, const Vector& target) {
  const Matrix d = spencer_delta(t, split.q, split.p);
  if (target.size() != d.rows()) throw DimensionMismatch("sigma: target has the wrong length");
  if (is_zero(target)) return Vector(d.cols(), Rational(0));
  const Vector x = split.sigma.apply(target);
  if (d.apply(x) != target) throw NotInImage("sigma: target is not in the image of δ");
  return x;
}

}  // namespace involute
