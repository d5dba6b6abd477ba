#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "involute/guillemin.hpp"
#include "involute/systems.hpp"

namespace involute {

// Everything the solver needs about a system: the involutive order k, the
// S-chain up to S_(k+1), and a normal basis of A^(k).
struct CauchyContext {
  System sys;
  int k = 0;
  CharacterVector characters;  // of A^(k)
  TowerData tower;             // order k
  Tableau level;               // A^(k) in Hom(a, A^(k-1))
  NormalForm nf;
  Matrix normal;  // level-k coordinates of the normal basis, as columns

  std::size_t n() const { return sys.n(); }
  std::size_t dim_k() const { return tower.coords.dim(k); }
  // Dimension of the target of i(e_l) on A^(k): A^(k-1), or b when k = 0.
  std::size_t dim_below() const { return k == 0 ? sys.r() : tower.coords.dim(k - 1); }

  // i(e_l) : A^(k) -> A^(k-1) (b when k = 0) in level coordinates.
  Matrix contraction_below(std::size_t l) const {
    if (k > 0) return tower.coords.contraction(k - 1, l);
    Matrix m(sys.r(), sys.s());
    for (std::size_t a = 0; a < sys.s(); ++a)
      for (std::size_t b = 0; b < sys.r(); ++b) m(b, a) = sys.tableau.generators()[a](b, l);
    return m;
  }
  Matrix contraction_below(const Vector& xi) const {
    Matrix m(dim_below(), dim_k());
    for (std::size_t l = 0; l < n(); ++l)
      if (xi[l] != 0) m = m + contraction_below(l).scaled(xi[l]);
    return m;
  }
};

inline CauchyContext prepare_cauchy(const System& sys, std::mt19937_64& rng, const Matrix* flag = nullptr,
                                    int h_max = 4) {
  CauchyContext cx;
  cx.sys = sys;
  const InvolutiveIndex idx = sys.tableau.involutive_index(h_max, rng);
  cx.k = idx.k;
  cx.characters = idx.characters;
  cx.tower = build_s_chain(sys, cx.k);
  cx.level = sys.tableau.level(cx.k);
  cx.nf = normal_form(cx.level, rng, 3, flag);
  const auto& gens = cx.level.generators();
  const std::size_t rows = cx.level.b_dim() * cx.level.a_dim();
  std::vector<Vector> gcols;
  for (const auto& g : gens) gcols.push_back(detail::flatten(g));
  const Matrix gm = Matrix::from_columns(gcols, rows);
  std::vector<Vector> cols;
  for (const auto& q : cx.nf.normal_basis) cols.push_back(solve_affine(gm, detail::flatten(q)).particular);
  cx.normal = Matrix::from_columns(cols, gens.size());
  return cx;
}

// Cauchy data: base point, constants P_(h) for h < k in level coordinates,
// and for each block ρ a polynomial map in y^1..y^ρ giving the coefficients
// along the normal elements Q_[ρ],1..s_ρ.  Here x = x0 + sum y^i A_i.
struct CauchyData {
  Vector x0;
  std::vector<Vector> p_const;
  std::vector<PolyMap> p_blocks;
};

// Q_(h) as polynomials in u = x - x0 (standard coordinates of a), in level
// coordinates, for h = 0..k.
struct FormalSolution {
  int degree = 0;
  int k = 0;
  Vector x0;
  Matrix basis_a;
  std::vector<PolyMap> levels;
  PolyMap normal_coefficients;  // Q_(k) along the normal basis, in y
  std::size_t data_coefficients = 0;
  bool literal_composition = true;  // each [ρ]-block independent of y^{ρ+1..n}
};

inline void check_cauchy_data(const CauchyContext& cx, const CauchyData& data, int D) {
  const std::size_t n = cx.n();
  if (D < 1 || D > cx.sys.tableau.limits().max_degree)
    throw CapExceeded("truncation degree must lie in 1.." + std::to_string(cx.sys.tableau.limits().max_degree));
  if (data.x0.size() != n) throw DimensionMismatch("cauchy data: x0 has the wrong length");
  if (data.p_const.size() != static_cast<std::size_t>(cx.k))
    throw DimensionMismatch("cauchy data: expected " + std::to_string(cx.k) + " constant levels");
  for (int h = 0; h < cx.k; ++h)
    if (data.p_const[static_cast<std::size_t>(h)].size() != cx.tower.coords.dim(h))
      throw DimensionMismatch("cauchy data: P_(" + std::to_string(h) + ") has the wrong length");
  if (data.p_blocks.size() != cx.nf.nu)
    throw DimensionMismatch("cauchy data: expected " + std::to_string(cx.nf.nu) + " blocks");
  for (std::size_t rho = 1; rho <= cx.nf.nu; ++rho) {
    const PolyMap& p = data.p_blocks[rho - 1];
    if (p.size() != cx.nf.s[rho - 1] || (p.size() && p.num_vars() != rho))
      throw DimensionMismatch("cauchy data: block " + std::to_string(rho) + " must have " +
                              std::to_string(cx.nf.s[rho - 1]) + " components in " + std::to_string(rho) +
                              " variables");
    if (p.degree() > D) throw InputError("cauchy data: block " + std::to_string(rho) + " exceeds the truncation degree");
  }
}

namespace detail {

inline PolyMap homogeneous(const PolyMap& p, int d) { return p.homogeneous_part(d); }

// Coefficients of the degree-d part as a map monomial -> vector.
inline Vector coefficient_at(const PolyMap& p, const Monomial& m) {
  Vector v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i].coefficient(m);
  return v;
}

}  // namespace detail

// Degree by degree: the levels below k follow from the jet relations; the
// degree-d part of Q_(k) solves the closure equations of the level below,
// with the coefficients supported in y^1..y^ρ of each [ρ]-block taken from
// the data.
inline FormalSolution solve_formal(const CauchyContext& cx, const CauchyData& data, int D) {
  check_cauchy_data(cx, data, D);
  const std::size_t n = cx.n(), dk = cx.dim_k(), db = cx.dim_below();
  const int k = cx.k;
  const auto& tc = cx.tower.coords;
  const Matrix& A = cx.nf.basis_a;
  const std::size_t nv = tc.num_vars();

  // x(y) and the substitution vector for tower variables.
  std::vector<Polynomial> subs(nv, Polynomial(n));
  for (std::size_t l = 0; l < n; ++l) {
    Polynomial p = Polynomial::constant(n, data.x0[l]);
    for (std::size_t i = 0; i < n; ++i)
      if (A(l, i) != 0) p += Polynomial::variable(n, i) * A(l, i);
    subs[l] = p;
  }
  std::vector<PolyMap> q;
  for (int h = 0; h < k; ++h) q.push_back(PolyMap::constant(n, data.p_const[static_cast<std::size_t>(h)]));
  PolyMap c(n, dk);
  auto refresh = [&] {
    for (int h = 0; h < k; ++h)
      for (std::size_t a = 0; a < tc.dim(h); ++a) subs[tc.var(h, a)] = q[static_cast<std::size_t>(h)][a];
    const PolyMap qk = c.mapped(cx.normal);
    for (std::size_t a = 0; a < dk; ++a) subs[tc.var(k, a)] = qk[a];
  };

  // S_(h+1)(A_i) in level-h coordinates, as maps on the tower.
  std::vector<std::vector<PolyMap>> sa(static_cast<std::size_t>(k + 1));
  for (int h = 0; h <= k; ++h)
    for (std::size_t i = 0; i < n; ++i) {
      Matrix m(tc.dim(h), TensorLayout(n, tc.r(), h + 1, 1).size());
      for (std::size_t l = 0; l < n; ++l)
        if (A(l, i) != 0) m = m + (tc.coords(h) * tc.slot(h + 1, l)).scaled(A(l, i));
      sa[static_cast<std::size_t>(h)].push_back(cx.tower.s_chain[static_cast<std::size_t>(h)].mapped(m));
    }
  // i(A_i) on each level, and on A^(k) followed by the normal basis.
  auto contraction_along = [&](int h, std::size_t i) {
    Matrix m(tc.dim(h), tc.dim(h + 1));
    for (std::size_t l = 0; l < n; ++l)
      if (A(l, i) != 0) m = m + tc.contraction(h, l).scaled(A(l, i));
    return m;
  };
  std::vector<Matrix> cn;
  for (std::size_t i = 0; i < n; ++i) cn.push_back(cx.contraction_below(A.column(i)) * cx.normal);
  // Φ(A_i, A_j) for k = 0.
  const ExtBasis e2(n, 2);
  std::vector<PolyMap> phi_a;
  if (k == 0 && n >= 2) {
    const PolyMap phi = cx.sys.phi.extended(nv);
    for (std::size_t p = 0; p < e2.size(); ++p) {
      const std::size_t i = static_cast<std::size_t>(e2[p][0]), j = static_cast<std::size_t>(e2[p][1]);
      PolyMap out(nv, cx.sys.r());
      for (std::size_t lm = 0; lm < e2.size(); ++lm) {
        const std::size_t l = static_cast<std::size_t>(e2[lm][0]), m = static_cast<std::size_t>(e2[lm][1]);
        const Rational w = A(l, i) * A(m, j) - A(m, i) * A(l, j);
        if (w == 0) continue;
        for (std::size_t b = 0; b < cx.sys.r(); ++b) out[b] += phi[b * e2.size() + lm] * w;
      }
      phi_a.push_back(out);
    }
  }

  FormalSolution sol;
  sol.degree = D;
  sol.k = k;
  sol.x0 = data.x0;
  sol.basis_a = A;
  for (int d = 0; d <= D; ++d) {
    refresh();
    if (d >= 1) {
      // Levels below k: ∂_{y_i} Q_(h) = S_(h+1)(A_i) + i(A_i) Q_(h+1).
      std::vector<PolyMap> add;
      for (int h = 0; h < k; ++h) {
        PolyMap next = h + 1 < k ? q[static_cast<std::size_t>(h + 1)] : c.mapped(cx.normal);
        next = next.homogeneous_part(d - 1);
        PolyMap part(n, tc.dim(h));
        for (std::size_t i = 0; i < n; ++i) {
          PolyMap ri = sa[static_cast<std::size_t>(h)][i].compose(subs, d - 1).homogeneous_part(d - 1);
          ri += next.mapped(contraction_along(h, i));
          for (std::size_t a = 0; a < ri.size(); ++a) part[a] += ri[a] * Polynomial::variable(n, i);
        }
        add.push_back(part.scaled(Rational(1, d)));
      }
      for (int h = 0; h < k; ++h) q[static_cast<std::size_t>(h)] += add[static_cast<std::size_t>(h)];
      refresh();
    }

    // Degree-d part of Q_(k).
    const auto mons = monomials_of_degree(n, d);
    const auto lower = d >= 1 ? monomials_of_degree(n, d - 1) : std::vector<Monomial>{};
    std::map<Monomial, std::size_t> lower_idx;
    for (std::size_t m = 0; m < lower.size(); ++m) lower_idx[lower[m]] = m;
    const std::size_t npairs = e2.size(), rows = npairs * db * lower.size(), unknowns = dk * mons.size();
    Matrix sys_m(rows, unknowns);
    Vector rhs(rows, Rational(0));
    if (d >= 1 && n >= 2) {
      for (std::size_t p = 0; p < npairs; ++p) {
        const std::size_t i = static_cast<std::size_t>(e2[p][0]), j = static_cast<std::size_t>(e2[p][1]);
        PolyMap target;
        if (k == 0) {
          target = phi_a[p].compose(subs, d - 1).homogeneous_part(d - 1);
        } else {
          const PolyMap sj = sa[static_cast<std::size_t>(k - 1)][j].compose(subs, d).homogeneous_part(d);
          const PolyMap si = sa[static_cast<std::size_t>(k - 1)][i].compose(subs, d).homogeneous_part(d);
          target = sj.partial(i) - si.partial(j);
        }
        for (std::size_t b = 0; b < db; ++b)
          for (const auto& [mono, coef] : target[b].terms()) rhs[(p * db + b) * lower.size() + lower_idx.at(mono)] = coef;
        for (std::size_t e = 0; e < dk; ++e)
          for (std::size_t mi = 0; mi < mons.size(); ++mi) {
            const Monomial& m = mons[mi];
            const std::size_t col = e * mons.size() + mi;
            if (m[j] > 0) {
              Monomial mm = m;
              --mm[j];
              const std::size_t li = lower_idx.at(mm);
              for (std::size_t b = 0; b < db; ++b) sys_m((p * db + b) * lower.size() + li, col) += cn[i](b, e) * m[j];
            }
            if (m[i] > 0) {
              Monomial mm = m;
              --mm[i];
              const std::size_t li = lower_idx.at(mm);
              for (std::size_t b = 0; b < db; ++b) sys_m((p * db + b) * lower.size() + li, col) -= cn[j](b, e) * m[i];
            }
          }
      }
    }
    // Data-supplied unknowns.
    std::vector<bool> fixed(unknowns, false);
    Vector value(unknowns, Rational(0));
    for (std::size_t e = 0; e < dk; ++e) {
      const auto [rho, a] = cx.nf.labels[e];
      for (std::size_t mi = 0; mi < mons.size(); ++mi) {
        const Monomial& m = mons[mi];
        bool supported = true;
        for (std::size_t l = rho; l < n; ++l) supported = supported && m[l] == 0;
        if (!supported) continue;
        const std::size_t col = e * mons.size() + mi;
        fixed[col] = true;
        value[col] = data.p_blocks[rho - 1][a - 1].coefficient(Monomial(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(rho)));
        ++sol.data_coefficients;
      }
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t u = 0; u < unknowns; ++u)
      if (!fixed[u]) free_cols.push_back(u);
    Vector reduced = rhs;
    for (std::size_t u = 0; u < unknowns; ++u)
      if (fixed[u] && value[u] != 0)
        for (std::size_t row = 0; row < rows; ++row)
          if (sys_m(row, u) != 0) reduced[row] -= sys_m(row, u) * value[u];
    if (!free_cols.empty()) {
      const Matrix mf = sys_m.select_columns(free_cols);
      AffineSolution as;
      try {
        as = solve_affine(mf, reduced);
      } catch (const Inconsistent&) {
        throw InconsistentData("solve_formal: the degree " + std::to_string(d) + " system is inconsistent");
      }
      if (!as.kernel.empty())
        throw InconsistentData("solve_formal: the degree " + std::to_string(d) + " system leaves " +
                               std::to_string(as.kernel.size()) + " coefficients undetermined");
      for (std::size_t f = 0; f < free_cols.size(); ++f) value[free_cols[f]] = as.particular[f];
    } else if (!is_zero(reduced)) {
      throw InconsistentData("solve_formal: the degree " + std::to_string(d) + " data violate the system");
    }
    for (std::size_t e = 0; e < dk; ++e)
      for (std::size_t mi = 0; mi < mons.size(); ++mi) c[e].add_term(mons[mi], value[e * mons.size() + mi]);
  }

  for (std::size_t e = 0; e < dk; ++e) {
    const std::size_t rho = cx.nf.labels[e].first;
    for (const auto& [m, v] : c[e].terms())
      for (std::size_t l = rho; l < n; ++l)
        if (m[l] != 0) sol.literal_composition = false;
  }
  sol.normal_coefficients = c;
  // y = A^{-1} u.
  const Matrix ainv = inverse(A);
  std::vector<Polynomial> ysub;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial p(n);
    for (std::size_t l = 0; l < n; ++l)
      if (ainv(i, l) != 0) p += Polynomial::variable(n, l) * ainv(i, l);
    ysub.push_back(p);
  }
  for (int h = 0; h < k; ++h) sol.levels.push_back(q[static_cast<std::size_t>(h)].compose(ysub));
  sol.levels.push_back(c.mapped(cx.normal).compose(ysub));
  return sol;
}

struct ResidualReport {
  int checked_through = 0;
  bool clean = true;
  int lowest_degree = -1;
  std::string component;
};

namespace detail {

inline void record_residual(ResidualReport& r, const PolyMap& res, const std::vector<std::string>& names) {
  for (std::size_t c = 0; c < res.size(); ++c)
    for (const auto& [m, v] : res[c].terms()) {
      const int d = total_degree(m);
      if (d > r.checked_through) continue;
      if (r.lowest_degree < 0 || d < r.lowest_degree) {
        r.lowest_degree = d;
        r.component = c < names.size() ? names[c] : std::to_string(c + 1);
      }
      r.clean = false;
    }
}

// Polynomials x_l = x0_l + u_l followed by the given level maps.
inline std::vector<Polynomial> point_substitution(const Vector& x0, std::size_t nv, const std::vector<PolyMap>& levels) {
  const std::size_t n = x0.size();
  std::vector<Polynomial> subs(nv, Polynomial(n));
  for (std::size_t l = 0; l < n; ++l) subs[l] = Polynomial::constant(n, x0[l]) + Polynomial::variable(n, l);
  std::size_t off = n;
  for (const auto& lv : levels)
    for (std::size_t a = 0; a < lv.size() && off < nv; ++a) subs[off++] = lv[a];
  return subs;
}

}  // namespace detail

// Left minus right side of the system with F = Q_(0), through degree D-1.
inline ResidualReport verify_solution(const System& sys, const FormalSolution& sol) {
  const std::size_t n = sys.n(), r = sys.r(), s = sys.s();
  ResidualReport rep;
  rep.checked_through = sol.degree - 1;
  if (n < 2) return rep;
  const PolyMap& f = sol.levels.at(0);
  const ExtBasis e2(n, 2);
  const auto subs = detail::point_substitution(sol.x0, n + s, {f});
  const PolyMap phi = sys.phi.compose(subs, sol.degree - 1);
  PolyMap res(n, r * e2.size());
  std::vector<std::string> names(res.size());
  for (std::size_t p = 0; p < e2.size(); ++p) {
    const std::size_t i = static_cast<std::size_t>(e2[p][0]), j = static_cast<std::size_t>(e2[p][1]);
    const PolyMap di = f.partial(i), dj = f.partial(j);
    for (std::size_t b = 0; b < r; ++b) {
      Polynomial lhs(n);
      for (std::size_t a = 0; a < s; ++a) {
        const Matrix& g = sys.tableau.generators()[a];
        if (g(b, i) != 0) lhs += dj[a] * g(b, i);
        if (g(b, j) != 0) lhs -= di[a] * g(b, j);
      }
      const std::size_t idx = b * e2.size() + p;
      res[idx] = lhs - phi[idx];
      names[idx] = "(" + std::to_string(b + 1) + "," + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    }
  }
  detail::record_residual(rep, res, names);
  return rep;
}

// ∂_j Q_(h) - S_(h+1)(e_j) - i(e_j) Q_(h+1) for h < k, through degree D-1.
inline ResidualReport verify_jets(const CauchyContext& cx, const FormalSolution& sol) {
  const auto& tc = cx.tower.coords;
  const std::size_t n = cx.n();
  ResidualReport rep;
  rep.checked_through = sol.degree - 1;
  const auto subs = detail::point_substitution(sol.x0, tc.num_vars(), sol.levels);
  for (int h = 0; h < sol.k; ++h)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMap res = sol.levels[static_cast<std::size_t>(h)].partial(j);
      res -= s_direction(cx.tower, h, j).compose(subs, sol.degree - 1);
      res -= sol.levels[static_cast<std::size_t>(h + 1)].mapped(tc.contraction(h, j)).truncated(sol.degree - 1);
      std::vector<std::string> names(res.size());
      for (std::size_t a = 0; a < res.size(); ++a)
        names[a] = "level " + std::to_string(h) + " direction " + std::to_string(j + 1) + " coordinate " + std::to_string(a + 1);
      detail::record_residual(rep, res, names);
    }
  return rep;
}

// Initial conditions: Q_(h)(x0) = P_(h) for h < k, and each [ρ]-block of
// Q_(k) on the slice y^{ρ+1} = ... = y^n = 0 equals P^[ρ] through degree D.
inline bool check_initial_conditions(const CauchyContext& cx, const CauchyData& data, const FormalSolution& sol) {
  const std::size_t n = cx.n();
  const Vector zero(n, Rational(0));
  for (int h = 0; h < sol.k; ++h)
    if (sol.levels[static_cast<std::size_t>(h)].eval(zero) != data.p_const[static_cast<std::size_t>(h)]) return false;
  for (std::size_t e = 0; e < cx.dim_k(); ++e) {
    const auto [rho, a] = cx.nf.labels[e];
    std::vector<Polynomial> slice;
    for (std::size_t l = 0; l < n; ++l)
      slice.push_back(l < rho ? Polynomial::variable(rho, l) : Polynomial(rho));
    const Polynomial restricted = sol.normal_coefficients[e].compose(slice);
    if (restricted != data.p_blocks[rho - 1][a - 1]) return false;
  }
  return true;
}

// dθ + ½[θ∧θ] for θ = scale·(A dx + B dy), where a wave-map solution
// F = (X1, X2) gives (A, B) = -(X1, X2).  Through degree D-1.
inline ResidualReport maurer_cartan_residual(const LieAlgebra& g, const FormalSolution& sol, const Rational& scale = 1) {
  const std::size_t d = g.dim();
  const PolyMap& f = sol.levels.at(0);
  PolyMap a(2, d), b(2, d);
  for (std::size_t i = 0; i < d; ++i) {
    a[i] = f[i] * (-scale);
    b[i] = f[d + i] * (-scale);
  }
  PolyMap res = b.partial(0) - a.partial(1) + detail::bracket_poly(g, a, b).truncated(sol.degree - 1);
  ResidualReport rep;
  rep.checked_through = sol.degree - 1;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < d; ++i) names.push_back("e" + std::to_string(i + 1));
  detail::record_residual(rep, res, names);
  return rep;
}

// ---- polar spaces ----

struct PolarReport {
  std::vector<std::size_t> dims, expected;
  Matrix flag;
  bool pass = true;
};

namespace detail {

struct PolarSetup {
  Matrix smat;  // S_(k+1)|_P(ξ) = smat ξ, level-k coordinates
  Vector qk1;   // Q_(k+1) in level-(k+1) coordinates
};

inline PolarSetup polar_setup(const CauchyContext& cx, const Vector& point, std::mt19937_64& rng) {
  const auto& tc = cx.tower.coords;
  const std::size_t n = cx.n();
  if (point.size() != tc.offset(cx.k) + tc.dim(cx.k)) throw DimensionMismatch("polar: point must have coordinates up to level k");
  Vector full(tc.num_vars(), Rational(0));
  std::copy(point.begin(), point.end(), full.begin());
  const Vector sval = cx.tower.s_chain[static_cast<std::size_t>(cx.k)].eval(full);
  PolarSetup ps;
  ps.smat = Matrix(tc.dim(cx.k), n);
  for (std::size_t l = 0; l < n; ++l) {
    const Vector col = (tc.coords(cx.k) * tc.slot(cx.k + 1, l)).apply(sval);
    for (std::size_t a = 0; a < col.size(); ++a) ps.smat(a, l) = col[a];
  }
  ps.qk1 = random_vector(rng, tc.dim(cx.k + 1), 5);
  return ps;
}

// F(ξ) = S(ξ) + i(ξ) Q_(k+1): the integral element over the whole of a.
inline Vector integral_value(const CauchyContext& cx, const PolarSetup& ps, const Vector& xi) {
  const auto& tc = cx.tower.coords;
  Vector v = ps.smat.apply(xi);
  for (std::size_t l = 0; l < cx.n(); ++l)
    if (xi[l] != 0) {
      const Vector c = tc.contraction(cx.k, l).apply(ps.qk1);
      axpy(v, xi[l], c);
    }
  return v;
}

// Polar space of span{ξ + F(ξ) : ξ among `xis`} inside a ⊕ A^(k).
inline Subspace polar_space(const CauchyContext& cx, const PolarSetup& ps, const std::vector<Vector>& xis) {
  const std::size_t n = cx.n(), dk = cx.dim_k(), db = cx.dim_below();
  Matrix eqs(0, n + dk);
  for (const auto& xi : xis) {
    const Matrix cxi = cx.contraction_below(xi);
    Vector w = integral_value(cx, ps, xi);
    axpy(w, Rational(-1), ps.smat.apply(xi));
    Matrix block(db, n + dk);
    const Matrix left = (cxi * ps.smat).scaled(-1);
    for (std::size_t l = 0; l < n; ++l) {
      const Vector c = cx.contraction_below(l).apply(w);
      for (std::size_t b = 0; b < db; ++b) block(b, l) = left(b, l) - c[b];
    }
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t a = 0; a < dk; ++a) block(b, n + a) = cxi(b, a);
    eqs = vstack(eqs, block);
  }
  return eqs.rows() ? kernel(eqs) : Subspace::whole(n + dk);
}

}  // namespace detail

// dim ℋ(P, 𝒜_h) for h = 0..n along a generic flag, against n + s_{h+1} + ... + s_n.
inline PolarReport polar_dims(const CauchyContext& cx, const Vector& point, std::mt19937_64& rng, int tries = 8) {
  const std::size_t n = cx.n();
  const Subspace& ak = cx.sys.tableau.prolongation(cx.k);
  Matrix flag;
  bool generic = false;
  for (int t = 0; t < tries && !generic; ++t) {
    flag = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flag(i, j) = random_integer(rng, 16);
    generic = rank(flag) == n &&
              increments(flag_codimensions(ak, n, cx.sys.r(), cx.k, flag)) == cx.characters.s;
  }
  if (!generic) throw UnstableGenericity("polar_dims: no generic flag found in " + std::to_string(tries) + " tries");
  const auto ps = detail::polar_setup(cx, point, rng);
  PolarReport rep;
  rep.flag = flag;
  for (std::size_t h = 0; h <= n; ++h) {
    std::vector<Vector> xis;
    for (std::size_t i = 0; i < h; ++i) xis.push_back(flag.column(i));
    rep.dims.push_back(detail::polar_space(cx, ps, xis).dim());
    std::size_t e = n;
    for (std::size_t j = h; j < n; ++j) e += cx.characters.s[j];
    rep.expected.push_back(e);
    rep.pass = rep.pass && rep.dims.back() == e;
  }
  return rep;
}

struct RestrictedPolar {
  std::size_t h = 0, dim = 0, expected = 0;
  bool contained = true;  // 𝒜_h ⊂ Σ(𝒜_{h+1})
  bool pass() const { return contained && dim == expected; }
};

// dim(ℋ(P, 𝒜_h) ∩ Σ(𝒜_{h+1})) along the regular basis, where
// 𝒜_{h+1} = span{A_i + pr_[h+1..ν] F(A_i) : i <= h+1} and
// Σ = 𝒜_{h+1} ⊕ A^(k)_[1] ⊕ ... ⊕ A^(k)_[h].
inline RestrictedPolar restricted_polar_check(const CauchyContext& cx, const Vector& point, std::size_t h,
                                              std::mt19937_64& rng) {
  const std::size_t n = cx.n(), dk = cx.dim_k();
  if (h >= n) throw InputError("restricted_polar_check: h must be less than n");
  const auto ps = detail::polar_setup(cx, point, rng);
  const Matrix& A = cx.nf.basis_a;
  const Matrix ninv = dk ? inverse(cx.normal) : Matrix(0, 0);
  std::vector<Vector> sigma;
  for (std::size_t i = 0; i <= h; ++i) {
    const Vector xi = A.column(i);
    Vector nc = ninv.apply(detail::integral_value(cx, ps, xi));
    for (std::size_t e = 0; e < dk; ++e)
      if (cx.nf.labels[e].first <= h) nc[e] = 0;
    const Vector g = cx.normal.apply(nc);
    Vector v = xi;
    v.insert(v.end(), g.begin(), g.end());
    sigma.push_back(std::move(v));
  }
  for (std::size_t e = 0; e < dk; ++e)
    if (cx.nf.labels[e].first <= h) {
      Vector v(n, Rational(0));
      const Vector col = cx.normal.column(e);
      v.insert(v.end(), col.begin(), col.end());
      sigma.push_back(std::move(v));
    }
  const Subspace sig = Subspace::span(n + dk, sigma);
  std::vector<Vector> xis;
  RestrictedPolar rp;
  rp.h = h;
  rp.expected = h + 1;
  for (std::size_t i = 0; i < h; ++i) {
    xis.push_back(A.column(i));
    Vector v = A.column(i);
    const Vector f = detail::integral_value(cx, ps, v);
    v.insert(v.end(), f.begin(), f.end());
    rp.contained = rp.contained && sig.contains(v);
  }
  rp.dim = intersect(detail::polar_space(cx, ps, xis), sig).dim();
  return rp;
}

// The point of M_(k) fixed by the data at x0.
inline Vector data_point(const CauchyContext& cx, const CauchyData& data) {
  Vector p = data.x0;
  for (const auto& c : data.p_const) p.insert(p.end(), c.begin(), c.end());
  Vector nc;
  for (std::size_t e = 0; e < cx.dim_k(); ++e) {
    const auto [rho, a] = cx.nf.labels[e];
    nc.push_back(data.p_blocks[rho - 1][a - 1].coefficient(Monomial(rho, 0)));
  }
  const Vector qk = cx.dim_k() ? cx.normal.apply(nc) : Vector{};
  p.insert(p.end(), qk.begin(), qk.end());
  return p;
}

}  // namespace involute
