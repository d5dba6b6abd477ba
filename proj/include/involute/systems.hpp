#pragma once

#include <random>
#include <string>
#include <vector>

#include "involute/forms.hpp"
#include "involute/lie.hpp"
#include "involute/polynomial.hpp"
#include "involute/spencer.hpp"

namespace involute {

// First-order system: Q(e_i)·∂_j F - Q(e_j)·∂_i F = Φ_ij(x, F) for F with
// values in the tableau.  Φ has one component per (a, i<j), index
// a * C(n,2) + J with J over ExtBasis(n, 2); its variables are x^1..x^n
// followed by the generator coordinates q^1..q^s.
struct System {
  Tableau tableau;
  PolyMap phi;
  std::vector<std::string> vars;

  std::size_t n() const { return tableau.a_dim(); }
  std::size_t r() const { return tableau.b_dim(); }
  std::size_t s() const { return tableau.dim(); }
  std::size_t pairs() const { return n() * (n() - (n() ? 1 : 0)) / 2; }
  std::size_t phi_index(std::size_t a, std::size_t i, std::size_t j) const {
    return a * pairs() + ExtBasis(n(), 2).index_of({static_cast<int>(i), static_cast<int>(j)});
  }
};

inline std::vector<std::string> default_var_names(std::size_t n, std::size_t s) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= s; ++i) v.push_back("q" + std::to_string(i));
  return v;
}

inline System make_system(Tableau t, PolyMap phi, std::vector<std::string> vars = {}) {
  const std::size_t n = t.a_dim(), s = t.dim();
  const std::size_t comps = t.b_dim() * (n >= 2 ? n * (n - 1) / 2 : 0);
  if (phi.size() == 0 && phi.num_vars() == 0) phi = PolyMap(n + s, comps);
  if (phi.num_vars() != n + s) throw DimensionMismatch("system: phi must use n + dim A variables");
  if (phi.size() != comps) throw DimensionMismatch("system: phi must have r * C(n,2) components");
  if (vars.empty()) vars = default_var_names(n, s);
  if (vars.size() != n + s) throw DimensionMismatch("system: wrong number of variable names");
  return System{std::move(t), std::move(phi), std::move(vars)};
}

struct Certificate {
  std::string name;
  bool pass = true;
  std::string method;
  std::string detail;
};

// Coordinates on M_(h) = a ⊕ A^(0) ⊕ ... ⊕ A^(h): x, then Q_(0) in generator
// coordinates, then Q_(l) in the canonical basis of A^(l) for l >= 1.
class TowerCoordinates {
 public:
  TowerCoordinates() = default;
  TowerCoordinates(const Tableau& t, int top) : n_(t.a_dim()), r_(t.b_dim()), top_(top) {
    for (int h = 0; h <= top; ++h) {
      Matrix e;
      if (h == 0) {
        std::vector<Vector> cols;
        for (const auto& g : t.generators()) {
          Vector v;
          for (std::size_t b = 0; b < r_; ++b)
            for (std::size_t i = 0; i < n_; ++i) v.push_back(g(b, i));
          cols.push_back(std::move(v));
        }
        e = Matrix::from_columns(cols, r_ * n_);
      } else {
        e = t.prolongation(h).basis_columns();
        if (e.cols() == 0) e = Matrix(r_ * SymBasis(n_, h + 1).size(), 0);
      }
      embed_.push_back(e);
      coords_.push_back(e.cols() ? left_inverse(e) : Matrix(0, e.rows()));
      offset_.push_back(h == 0 ? n_ : offset_.back() + dims_.back());
      dims_.push_back(e.cols());
    }
    num_vars_ = offset_.back() + dims_.back();
  }

  std::size_t n() const { return n_; }
  std::size_t r() const { return r_; }
  int top() const { return top_; }
  std::size_t num_vars() const { return num_vars_; }
  std::size_t dim(int h) const { return dims_.at(static_cast<std::size_t>(h)); }
  std::size_t offset(int h) const { return offset_.at(static_cast<std::size_t>(h)); }
  std::size_t var(int h, std::size_t alpha) const { return offset(h) + alpha; }
  // Level coordinates -> b ⊗ S^{h+1}, and back (valid on A^(h)).
  const Matrix& embed(int h) const { return embed_.at(static_cast<std::size_t>(h)); }
  const Matrix& coords(int h) const { return coords_.at(static_cast<std::size_t>(h)); }

  // i(e_j) : A^(h+1) -> A^(h) in level coordinates.
  Matrix contraction(int h, std::size_t j) const {
    return coords(h) * contraction_matrix(n_, r_, h + 1, j) * embed(h + 1);
  }

  // The j-th slot of an element of b ⊗ S^q ⊗ Λ^1, as an element of b ⊗ S^q.
  Matrix slot(int q, std::size_t j) const {
    const TensorLayout l(n_, r_, q, 1);
    Matrix m(r_ * l.sym.size(), l.size());
    for (std::size_t b = 0; b < r_; ++b)
      for (std::size_t i = 0; i < l.sym.size(); ++i) m(b * l.sym.size() + i, l.index(b, i, j)) = 1;
    return m;
  }

  Polynomial x(std::size_t i) const { return Polynomial::variable(num_vars_, i); }
  PolyMap level_vars(int h) const {
    PolyMap m(num_vars_, dim(h));
    for (std::size_t a = 0; a < dim(h); ++a) m[a] = Polynomial::variable(num_vars_, var(h, a));
    return m;
  }

 private:
  std::size_t n_ = 0, r_ = 0, num_vars_ = 0;
  int top_ = 0;
  std::vector<Matrix> embed_, coords_;
  std::vector<std::size_t> offset_, dims_;
};

// S_(r) is stored in the full layout b ⊗ S^r ⊗ Λ^1 as a polynomial map on
// M_(r-1); s_chain[r-1] = S_(r).
struct TowerData {
  int order = 0;
  TowerCoordinates coords;
  std::vector<PolyMap> s_chain;
  std::vector<Certificate> certificates;
};

namespace detail {

inline Polynomial dot_poly(const std::vector<Polynomial>& ps, const Vector& v, std::size_t nv) {
  Polynomial out(nv);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out += ps[i] * v[i];
  return out;
}

}  // namespace detail

// (S_(h+1) + Q_(h+1))(e_j) in level-h coordinates.
inline PolyMap jet_direction(const TowerData& td, int h, std::size_t j) {
  const auto& c = td.coords;
  PolyMap w = td.s_chain.at(static_cast<std::size_t>(h)).mapped(c.coords(h) * c.slot(h + 1, j));
  if (h + 1 <= c.top()) w += c.level_vars(h + 1).mapped(c.contraction(h, j));
  return w;
}

// S_(h+1)(e_j) only, in level-h coordinates.
inline PolyMap s_direction(const TowerData& td, int h, std::size_t j) {
  const auto& c = td.coords;
  return td.s_chain.at(static_cast<std::size_t>(h)).mapped(c.coords(h) * c.slot(h + 1, j));
}

// Total derivative along e_j of a map on M_(level).
inline PolyMap total_derivative(const TowerData& td, const PolyMap& f, int level, std::size_t j) {
  const auto& c = td.coords;
  PolyMap out = f.partial(j);
  for (int h = 0; h <= level; ++h) {
    const PolyMap w = jet_direction(td, h, j);
    for (std::size_t a = 0; a < c.dim(h); ++a) {
      const PolyMap df = f.partial(c.var(h, a));
      if (df.is_zero() || w[a].is_zero()) continue;
      for (std::size_t k = 0; k < f.size(); ++k)
        if (!df[k].is_zero()) out[k] += df[k] * w[a];
    }
  }
  return out;
}

// D̄S(e_i, e_j) = 𝒟_j S(e_i) - 𝒟_i S(e_j) for S = S_(m), in the full layout
// b ⊗ S^m ⊗ Λ^2.
inline PolyMap dbar(const TowerData& td, int m) {
  const auto& c = td.coords;
  const std::size_t n = c.n(), r = c.r();
  const PolyMap& s = td.s_chain.at(static_cast<std::size_t>(m - 1));
  std::vector<PolyMap> ds;
  for (std::size_t j = 0; j < n; ++j) ds.push_back(total_derivative(td, s, m - 1, j));
  const TensorLayout l1(n, r, m, 1), l2(n, r, m, 2);
  PolyMap out(c.num_vars(), l2.size());
  for (std::size_t jj = 0; jj < l2.ext.size(); ++jj) {
    const auto i = static_cast<std::size_t>(l2.ext[jj][0]), j = static_cast<std::size_t>(l2.ext[jj][1]);
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t I = 0; I < l2.sym.size(); ++I)
        out[l2.index(b, I, jj)] = ds[j][l1.index(b, I, i)] - ds[i][l1.index(b, I, j)];
  }
  return out;
}

// The unique S in B_{q,1} with δ(S) = target, coefficientwise.
inline PolyMap solve_coexact(const Tableau& t, int q, const PolyMap& target) {
  const std::size_t n = t.a_dim(), r = t.b_dim();
  const TensorLayout src(n, r, q, 1);
  if (n < 2) return PolyMap(target.num_vars(), src.size());
  const SpencerCell dst = spencer_cell(t, q - 1, 2), cell = spencer_cell(t, q, 1);
  const HarmonicSplit split = harmonic_split(t, q, 1);
  std::map<Monomial, Vector> out;
  for (const auto& [mono, v] : target.coefficient_vectors()) {
    Vector y;
    try {
      y = dst.restrict(v);
    } catch (const NotInImage&) {
      throw NotInImage("solve_coexact: a coefficient lies outside C^{" + std::to_string(q - 1) + ",2}");
    }
    const Vector x = sigma_apply(t, split, y);
    out.emplace(mono, cell.embed(x));
  }
  return PolyMap::from_coefficient_vectors(target.num_vars(), src.size(), out);
}

inline PolyMap apply_delta(std::size_t n, std::size_t r, int q, int p, const PolyMap& f) {
  const Matrix d = koszul_delta_full(n, r, q, p);
  if (d.rows() == 0) return PolyMap(f.num_vars(), 0);
  return f.mapped(d);
}

// Φ(x, q) ∈ B^{0,2} as an identity: every coefficient vector lies in the
// image of δ^{1,1}.  Past `term_cap` monomials, `trials` random exact
// evaluations are used instead.
inline Certificate check_phi_in_B02(const System& sys, int trials = 8, std::uint64_t seed = 1,
                                    std::size_t term_cap = 20000) {
  Certificate c{"phi_in_B02", true, "symbolic", ""};
  if (sys.n() < 2 || sys.phi.is_zero()) {
    c.method = "trivial";
    return c;
  }
  const Matrix d = spencer_delta(sys.tableau, 1, 1);
  const Subspace img = d.cols() ? image(d) : Subspace(d.rows());
  const auto table = sys.phi.coefficient_vectors();
  if (table.size() <= term_cap) {
    for (const auto& [mono, v] : table)
      if (!img.contains(v)) {
        c.pass = false;
        std::string e;
        for (int x : mono) e += (e.empty() ? "" : ",") + std::to_string(x);
        c.detail = "coefficient of monomial (" + e + ") is outside the image of δ^{1,1}";
        return c;
      }
    return c;
  }
  c.method = "sampled " + std::to_string(trials) + " exact evaluations";
  std::mt19937_64 rng(seed);
  for (int k = 0; k < trials; ++k) {
    const Vector pt = random_vector(rng, sys.phi.num_vars(), 1000);
    if (!img.contains(sys.phi.eval(pt))) {
      c.pass = false;
      std::string w;
      for (const auto& x : pt) w += (w.empty() ? "" : ",") + to_string(x);
      c.detail = "violation at (" + w + ")";
      return c;
    }
  }
  return c;
}

// Cyclic sum of the directional derivative of Φ along (e_i, Q_(1)(e_i)),
// over basis triples and a basis of A^(1) plus the pure x-direction.  A
// second check applies δ^{1,2} to D̄S_(1), which also involves S_(1).
inline std::vector<Certificate> check_torsion_condition(const System& sys) {
  std::vector<Certificate> out;
  Certificate lit{"torsion_directional", true, "symbolic", ""};
  Certificate clo{"torsion_closure", true, "symbolic", ""};
  const std::size_t n = sys.n(), r = sys.r();
  if (n < 3 || sys.phi.is_zero()) {
    lit.method = clo.method = n < 3 ? "trivial (n < 3)" : "trivial (phi = 0)";
    return {lit, clo};
  }
  const Tableau& t = sys.tableau;
  const TowerCoordinates tc(t, 1);
  const std::size_t nv = sys.phi.num_vars();
  // Directions: x-part, then each basis element of A^(1).
  std::vector<std::vector<Vector>> dirs;  // dirs[k][i] = q-direction for slot e_i
  dirs.push_back(std::vector<Vector>(n, Vector(tc.dim(0), Rational(0))));
  for (std::size_t beta = 0; beta < tc.dim(1); ++beta) {
    std::vector<Vector> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(tc.contraction(0, i).apply(unit_vector(tc.dim(1), beta)));
    dirs.push_back(std::move(d));
  }
  auto comp = [&](std::size_t a, std::size_t i, std::size_t j) {
    return i < j ? sys.phi[sys.phi_index(a, i, j)] : sys.phi[sys.phi_index(a, j, i)] * Rational(-1);
  };
  for (std::size_t k = 0; k < dirs.size() && lit.pass; ++k)
    for (std::size_t i = 0; i < n && lit.pass; ++i)
      for (std::size_t j = i + 1; j < n && lit.pass; ++j)
        for (std::size_t l = j + 1; l < n && lit.pass; ++l)
          for (std::size_t a = 0; a < r && lit.pass; ++a) {
            const std::size_t cyc[3][3] = {{i, j, l}, {j, l, i}, {l, i, j}};
            Polynomial sum(nv);
            for (const auto& c3 : cyc) {
              const Polynomial f = comp(a, c3[1], c3[2]);
              if (k == 0) sum += f.partial(c3[0]);
              const Vector& dq = dirs[k][c3[0]];
              for (std::size_t al = 0; al < dq.size(); ++al)
                if (dq[al] != 0) sum += f.partial(n + al) * dq[al];
            }
            if (!sum.is_zero()) {
              lit.pass = false;
              lit.detail = "component " + std::to_string(a + 1) + " on slots (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + "," + std::to_string(l + 1) + ") along " +
                           (k == 0 ? std::string("the x-direction") : "A^(1) basis element " + std::to_string(k));
            }
          }
  out.push_back(lit);

  // Closure: δ^{1,2}(D̄S_(1)) = 0 on M_(1).
  TowerData td;
  td.order = 0;
  td.coords = tc;
  try {
    td.s_chain.push_back(solve_coexact(t, 1, sys.phi.extended(tc.num_vars())));
  } catch (const CheckFailed& e) {
    clo.pass = false;
    clo.detail = std::string("S_(1) does not exist: ") + e.what();
    out.push_back(clo);
    return out;
  }
  const PolyMap dd = apply_delta(n, r, 1, 2, dbar(td, 1));
  if (!dd.is_zero()) {
    clo.pass = false;
    for (std::size_t k = 0; k < dd.size(); ++k)
      if (!dd[k].is_zero()) {
        clo.detail = "δ(D̄S_(1)) has a nonzero component " + std::to_string(k + 1);
        break;
      }
  }
  out.push_back(clo);
  return out;
}

// S_(1), ..., S_(h+1) with δS_(1) = Φ and δS_(r) = -D̄S_(r-1), each valued in
// B_{r,1}.  Coordinates run up to Q_(h+1) so the structure equations of
// order h can be formed.
inline TowerData build_s_chain(const System& sys, int h) {
  if (h < 0) throw InputError("build_s_chain: order must be non-negative");
  const Tableau& t = sys.tableau;
  const std::size_t n = sys.n(), r = sys.r();
  const auto acyc = two_acyclicity(t, std::max(1, h + 1));
  if (!acyc.acyclic) {
    std::string dims;
    for (auto d : acyc.h_dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
    throw NotTwoAcyclic("build_s_chain: H^{q,2} dims (" + dims + ")");
  }
  TowerData td;
  td.order = h;
  td.coords = TowerCoordinates(t, h + 1);
  const std::size_t nv = td.coords.num_vars();
  const PolyMap phi = sys.phi.extended(nv);
  td.s_chain.push_back(solve_coexact(t, 1, phi));
  Certificate c1{"delta_S1_equals_phi", true, "symbolic", ""};
  if (n >= 2 && apply_delta(n, r, 1, 1, td.s_chain[0]) != phi) c1.pass = false;
  td.certificates.push_back(c1);
  for (int m = 2; m <= h + 1; ++m) {
    const PolyMap target = dbar(td, m - 1).scaled(Rational(-1));
    td.s_chain.push_back(solve_coexact(t, m, target));
    Certificate c{"delta_S" + std::to_string(m) + "_equals_minus_dbar", true, "symbolic", ""};
    if (n >= 2 && apply_delta(n, r, m, 1, td.s_chain.back()) != target) c.pass = false;
    td.certificates.push_back(c);
  }
  // Values in B_{m,1}.
  for (int m = 1; m <= h + 1; ++m) {
    Certificate c{"S" + std::to_string(m) + "_in_B", true, "symbolic", ""};
    if (n >= 2) {
      const SpencerCell cell = spencer_cell(t, m, 1);
      const HarmonicSplit split = harmonic_split(t, m, 1);
      for (const auto& [mono, v] : td.s_chain[static_cast<std::size_t>(m - 1)].coefficient_vectors()) {
        try {
          if (!split.coexact.contains(cell.restrict(v))) c.pass = false;
        } catch (const NotInImage&) {
          c.pass = false;
        }
      }
    }
    td.certificates.push_back(c);
  }
  return td;
}

struct StructureItem {
  std::string label;
  bool pass = true;
  std::string detail;
};

namespace detail {

// β_(l) component a, or π_(l) when `pi` is set.
inline Form beta_form(const TowerData& td, int l, std::size_t a, bool pi) {
  const auto& c = td.coords;
  const std::size_t nv = c.num_vars();
  Form f = Form::one(Polynomial::constant(nv, 1), static_cast<int>(c.var(l, a)));
  for (std::size_t j = 0; j < c.n(); ++j) {
    const PolyMap w = pi ? s_direction(td, l, j) : jet_direction(td, l, j);
    f -= Form::one(w[a], static_cast<int>(j));
  }
  return f;
}

// Form symbols: v < nv is d(var v); nv + (offset(l) - n) + a is θ_(l),a.
inline int theta_symbol(const TowerCoordinates& c, int l, std::size_t a) {
  return static_cast<int>(c.num_vars() + c.offset(l) - c.n() + a);
}

}  // namespace detail

// dβ_(l) + β_(l+1)∧̇dx ≡ 0 mod {β_(0..l)} for l < order, and
// dβ_(l-1) + π_(l)∧̇dx ≡ 0 mod {β_(0..l-1)} for 1 <= l <= order.  Reduction
// uses the coframe dQ_(s) = θ_(s) + (S_(s+1) + Q_(s+1))(dx).
inline std::vector<StructureItem> verify_structure_equations(const TowerData& td) {
  const auto& c = td.coords;
  const std::size_t n = c.n(), nv = c.num_vars();
  std::vector<StructureItem> out;
  auto reduce_and_test = [&](const Form& e, int subst_to, int mod_to) {
    std::vector<std::vector<PolyMap>> w(static_cast<std::size_t>(subst_to + 1));
    for (int s = 0; s <= subst_to; ++s)
      for (std::size_t j = 0; j < n; ++j) w[static_cast<std::size_t>(s)].push_back(jet_direction(td, s, j));
    auto subs = [&](int sym) -> Form {
      const Polynomial one = Polynomial::constant(nv, 1);
      if (sym < static_cast<int>(n) || sym >= static_cast<int>(nv)) return Form::one(one, sym);
      int lev = -1;
      for (int s = 0; s <= c.top(); ++s)
        if (static_cast<std::size_t>(sym) >= c.offset(s) && static_cast<std::size_t>(sym) < c.offset(s) + c.dim(s)) lev = s;
      if (lev > subst_to) return Form::one(one, sym);
      const std::size_t a = static_cast<std::size_t>(sym) - c.offset(lev);
      Form f = Form::one(one, detail::theta_symbol(c, lev, a));
      for (std::size_t j = 0; j < n; ++j) f += Form::one(w[static_cast<std::size_t>(lev)][j][a], static_cast<int>(j));
      return f;
    };
    const int lo = static_cast<int>(nv), hi = mod_to < 0 ? lo : detail::theta_symbol(c, mod_to, c.dim(mod_to));
    return e.substitute(subs).without([&](int s) { return s >= lo && s < hi; });
  };
  for (int l = 0; l < td.order; ++l) {
    StructureItem item{"d beta_" + std::to_string(l) + " = -beta_" + std::to_string(l + 1) + " ^. dx", true, ""};
    for (std::size_t a = 0; a < c.dim(l) && item.pass; ++a) {
      Form e = detail::beta_form(td, l, a, false).d();
      for (std::size_t j = 0; j < n; ++j) {
        const Vector row = c.contraction(l, j).row_vector(a);
        Form ib(nv);
        for (std::size_t g = 0; g < row.size(); ++g)
          if (row[g] != 0) ib += detail::beta_form(td, l + 1, g, false).times(Polynomial::constant(nv, row[g]));
        e += wedge(ib, Form::one(Polynomial::constant(nv, 1), static_cast<int>(j)));
      }
      const Form rem = reduce_and_test(e, l + 1, l);
      if (!rem.is_zero()) {
        item.pass = false;
        item.detail = "component " + std::to_string(a + 1);
      }
    }
    out.push_back(item);
  }
  for (int l = 1; l <= td.order; ++l) {
    StructureItem item{"d beta_" + std::to_string(l - 1) + " = -pi_" + std::to_string(l) + " ^. dx", true, ""};
    for (std::size_t a = 0; a < c.dim(l - 1) && item.pass; ++a) {
      Form e = detail::beta_form(td, l - 1, a, false).d();
      for (std::size_t j = 0; j < n; ++j) {
        const Vector row = c.contraction(l - 1, j).row_vector(a);
        Form ip(nv);
        for (std::size_t g = 0; g < row.size(); ++g)
          if (row[g] != 0) ip += detail::beta_form(td, l, g, true).times(Polynomial::constant(nv, row[g]));
        e += wedge(ip, Form::one(Polynomial::constant(nv, 1), static_cast<int>(j)));
      }
      const Form rem = reduce_and_test(e, l - 1, l - 1);
      if (!rem.is_zero()) {
        item.pass = false;
        item.detail = "component " + std::to_string(a + 1);
      }
    }
    out.push_back(item);
  }
  return out;
}

// ---- Lie-algebra examples ----

namespace detail {

// Polynomial bracket of two g-valued polynomial maps.
inline PolyMap bracket_poly(const LieAlgebra& g, const PolyMap& x, const PolyMap& y) {
  const std::size_t d = g.dim(), nv = x.num_vars();
  PolyMap out(nv, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y[j].is_zero()) continue;
      const Polynomial xy = x[i] * y[j];
      for (std::size_t k = 0; k < d; ++k)
        if (g.c(i, j, k) != 0) out[k] += xy * g.c(i, j, k);
    }
  }
  return out;
}

}  // namespace detail

// G/G0 system on maps a -> b: Q_B(A) = [A, B] in p-coordinates and
// Φ_ij(B) = [[A_i, B], [A_j, B]].
inline System build_gg0_system(const CartanDecomposition& cd) {
  const std::size_t n = cd.n(), nb = cd.b.cols(), np = cd.p.cols(), d = cd.g.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (!is_regular(cd, cd.a_vec(i)))
      throw NotRegular("basis element A_" + std::to_string(i + 1) + " of a is not regular");
  if (nb != np) throw BadDecomposition("dim b differs from dim p");
  std::vector<Matrix> gens;
  for (std::size_t al = 0; al < nb; ++al) {
    Matrix m(np, n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vector c = cd.p_coordinates(cd.g.bracket(cd.a_vec(i), cd.b_vec(al)));
      for (std::size_t k = 0; k < np; ++k) m(k, i) = c[k];
    }
    gens.push_back(std::move(m));
  }
  Tableau t(n, np, gens);
  const std::size_t nv = n + nb;
  PolyMap bmap(nv, d);  // B = sum q_α b_α in g-coordinates
  for (std::size_t al = 0; al < nb; ++al)
    for (std::size_t k = 0; k < d; ++k)
      if (cd.b(k, al) != 0) bmap[k] += Polynomial::variable(nv, n + al) * cd.b(k, al);
  const Subspace psub = Subspace::span(d, CartanDecomposition::columns(cd.p));
  const std::size_t pairs = n >= 2 ? n * (n - 1) / 2 : 0;
  PolyMap phi(nv, np * pairs);
  const ExtBasis e2(n, 2);
  for (std::size_t jj = 0; jj < pairs; ++jj) {
    const auto i = static_cast<std::size_t>(e2[jj][0]), j = static_cast<std::size_t>(e2[jj][1]);
    const PolyMap ai = PolyMap::constant(nv, cd.a_vec(i)), aj = PolyMap::constant(nv, cd.a_vec(j));
    const PolyMap v = detail::bracket_poly(cd.g, detail::bracket_poly(cd.g, ai, bmap),
                                           detail::bracket_poly(cd.g, aj, bmap));
    // p-coordinates are the values at the pivot positions of the canonical basis.
    for (const auto& [mono, vec] : v.coefficient_vectors()) {
      if (!psub.contains(vec)) throw BadDecomposition("[[A_i,B],[A_j,B]] does not lie in p");
      const Vector pc = psub.coordinates(vec);
      for (std::size_t k = 0; k < np; ++k) phi[k * pairs + jj].add_term(mono, pc[k]);
    }
  }
  std::vector<std::string> vars;
  for (std::size_t i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= nb; ++i) vars.push_back("b" + std::to_string(i));
  return make_system(std::move(t), std::move(phi), std::move(vars));
}

// 2[[A_1,B],[A_2,B]] = δ(S|_B)(A_1,A_2) with S|_B(A) = [B,[A,B]] projected to b,
// as a polynomial identity in the b-coordinates of B.
inline bool gg0_bracket_identity(const CartanDecomposition& cd, const System& sys) {
  const std::size_t n = cd.n(), nb = cd.b.cols(), d = cd.g.dim(), nv = n + nb;
  if (n < 2) return true;
  PolyMap bmap(nv, d);
  for (std::size_t al = 0; al < nb; ++al)
    for (std::size_t k = 0; k < d; ++k)
      if (cd.b(k, al) != 0) bmap[k] += Polynomial::variable(nv, n + al) * cd.b(k, al);
  // m-coordinates split as a ⊕ b.
  const Matrix ab = hstack(cd.a, cd.b);
  const Matrix li = left_inverse(ab);
  std::vector<PolyMap> s_of;  // S|_B(A_i) in g-coordinates
  for (std::size_t i = 0; i < n; ++i) {
    const PolyMap ai = PolyMap::constant(nv, cd.a_vec(i));
    const PolyMap v = detail::bracket_poly(cd.g, bmap, detail::bracket_poly(cd.g, ai, bmap));
    const PolyMap split = v.mapped(li);
    PolyMap bpart(nv, nb);
    for (std::size_t al = 0; al < nb; ++al) bpart[al] = split[n + al];
    if (split.mapped(ab) != v) return false;
    s_of.push_back(bpart.mapped(cd.b));
  }
  const Subspace psub = Subspace::span(d, CartanDecomposition::columns(cd.p));
  const ExtBasis e2(n, 2);
  for (std::size_t jj = 0; jj < e2.size(); ++jj) {
    const auto i = static_cast<std::size_t>(e2[jj][0]), j = static_cast<std::size_t>(e2[jj][1]);
    const PolyMap ai = PolyMap::constant(nv, cd.a_vec(i)), aj = PolyMap::constant(nv, cd.a_vec(j));
    // δ(S)(A_i, A_j) = Q_{S(A_j)}(A_i) - Q_{S(A_i)}(A_j) with Q_B(A) = [A, B].
    const PolyMap lhs = detail::bracket_poly(cd.g, ai, s_of[j]) - detail::bracket_poly(cd.g, aj, s_of[i]);
    for (std::size_t k = 0; k < sys.r(); ++k) {
      Polynomial rhs2 = sys.phi[k * e2.size() + jj] * Rational(2);
      Polynomial lp(nv);
      for (const auto& [mono, vec] : lhs.coefficient_vectors()) {
        if (!psub.contains(vec)) return false;
        lp.add_term(mono, psub.coordinates(vec)[k]);
      }
      if (lp != rhs2) return false;
    }
  }
  return true;
}

// 1+1 wave maps: b = g ⊕ g, generators X1 = e_k (Q(∂x) = (0, e_k)) then
// X2 = e_k (Q(∂y) = (e_k, 0)); Φ = -([X1,X2], [X1,X2]) dx∧dy.  A solution
// F = (X1, X2) gives a wave-map pair (A, B) = -(X1, X2).
inline System build_wavemap_system(const LieAlgebra& g) {
  g.check_jacobi();
  const std::size_t d = g.dim(), r = 2 * d, nv = 2 + r;
  std::vector<Matrix> gens;
  for (std::size_t k = 0; k < d; ++k) {
    Matrix m(r, 2);
    m(d + k, 0) = 1;
    gens.push_back(std::move(m));
  }
  for (std::size_t k = 0; k < d; ++k) {
    Matrix m(r, 2);
    m(k, 1) = 1;
    gens.push_back(std::move(m));
  }
  Tableau t(2, r, gens);
  PolyMap x1(nv, d), x2(nv, d);
  for (std::size_t k = 0; k < d; ++k) {
    x1[k] = Polynomial::variable(nv, 2 + k);
    x2[k] = Polynomial::variable(nv, 2 + d + k);
  }
  const PolyMap br = detail::bracket_poly(g, x1, x2);
  PolyMap phi(nv, r);
  for (std::size_t k = 0; k < d; ++k) {
    phi[k] = br[k] * Rational(-1);
    phi[d + k] = br[k] * Rational(-1);
  }
  std::vector<std::string> vars = {"x", "y"};
  for (std::size_t k = 1; k <= d; ++k) vars.push_back("u" + std::to_string(k));
  for (std::size_t k = 1; k <= d; ++k) vars.push_back("v" + std::to_string(k));
  return make_system(std::move(t), std::move(phi), std::move(vars));
}

}  // namespace involute
