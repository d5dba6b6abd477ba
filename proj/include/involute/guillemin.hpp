#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "involute/tableau.hpp"

namespace involute {

// Adapted bases for an involutive tableau.  Row blocks are nested: block [ν]
// is rows 1..s_ν, block [ρ] is rows s_{ρ+1}+1..s_ρ, block [0] is rows > s_1.
// Principal forms are π_i^b with b <= s_i; the normal basis is their dual.
struct NormalForm {
  std::size_t n = 0, r = 0;
  Matrix basis_a;  // n x n, columns A_1..A_n
  Matrix basis_b;  // r x r, columns B_1..B_r
  std::vector<std::size_t> s;
  std::size_t nu = 0;
  std::vector<std::pair<std::size_t, std::size_t>> labels;  // (j, a), 1-based
  std::vector<Matrix> normal_basis;                         // r x n, standard coordinates
  std::vector<Matrix> adapted;                              // r x n, C(b, i) = B-coordinate b of Q(A_i)

  std::size_t size() const { return normal_basis.size(); }
  // Index in the normal basis of Q_{[j],a} (1-based j, a).
  std::size_t index_of(std::size_t j, std::size_t a) const {
    for (std::size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == std::make_pair(j, a)) return k;
    throw InputError("NormalForm: no element with this label");
  }
  // Row range [lo, hi) (0-based) of block [rho].
  std::pair<std::size_t, std::size_t> block_rows(std::size_t rho) const {
    if (rho == 0) return {nu ? s[0] : 0, r};
    const std::size_t hi = s[rho - 1];
    const std::size_t lo = rho < s.size() ? s[rho] : 0;
    return {lo, hi};
  }
};

// Adapted coordinates: B^{-1} Q A.
inline Matrix adapted_coordinates(const Matrix& q, const Matrix& basis_a, const Matrix& basis_b) {
  return inverse(basis_b) * q * basis_a;
}

namespace detail {

inline Vector flatten(const Matrix& m) {
  Vector v;
  for (std::size_t b = 0; b < m.rows(); ++b)
    for (std::size_t i = 0; i < m.cols(); ++i) v.push_back(m(b, i));
  return v;
}

// Row functional π_i^b on the tableau, as a vector over the generators.
inline Vector functional(const std::vector<Matrix>& adapted_gens, std::size_t b, std::size_t i) {
  Vector v;
  for (const auto& g : adapted_gens) v.push_back(g(b, i));
  return v;
}

}  // namespace detail

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct NormalFormReport {
  std::vector<CheckItem> items;
  bool all_pass() const {
    for (const auto& c : items)
      if (!c.pass) return false;
    return true;
  }
  const CheckItem& item(const std::string& name) const {
    for (const auto& c : items)
      if (c.name == name) return c;
    throw InputError("no check named " + name);
  }
};

// Re-checks every normal-form property from the tableau and the bases.
inline NormalFormReport verify_normal_form(const Tableau& t, const NormalForm& nf, std::mt19937_64& rng) {
  NormalFormReport rep;
  const std::size_t n = t.a_dim(), r = t.b_dim();
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    rep.items.push_back({std::move(name), pass, std::move(detail)});
  };
  if (nf.n != n || nf.r != r || nf.basis_a.rows() != n || nf.basis_b.rows() != r) {
    add("shape", false, "normal form dimensions do not match the tableau");
    return rep;
  }
  const bool invertible = rank(nf.basis_a) == n && rank(nf.basis_b) == r;
  add("bases_invertible", invertible);
  if (!invertible) return rep;

  // Genericity of the flag A_1 ⊂ ... against a fresh certified sample.
  const CharacterVector cv = t.characters(0, rng);
  const auto along = increments(flag_codimensions(t.prolongation(0), n, r, 0, nf.basis_a));
  add("generic_flag", along == cv.s, "flag " + format_characters(along) + " vs generic " + format_characters(cv.s));
  add("block_sizes", nf.s == cv.s, format_characters(nf.s));

  std::vector<Matrix> ag;
  for (const auto& g : t.generators()) ag.push_back(adapted_coordinates(g, nf.basis_a, nf.basis_b));
  const std::size_t dimA = t.dim();
  const std::size_t s1 = nf.nu ? nf.s[0] : 0;

  bool pi0 = true;
  std::string pi0_detail;
  for (const auto& g : ag)
    for (std::size_t b = s1; b < r && pi0; ++b)
      for (std::size_t i = 0; i < n && pi0; ++i)
        if (g(b, i) != 0) {
          pi0 = false;
          pi0_detail = "row " + std::to_string(b + 1) + " column " + std::to_string(i + 1);
        }
  add("pi0_vanishes", pi0, pi0_detail);

  // π_i^{[ρ]} ∈ span(principal forms of columns 1..ρ) for i >= ρ.
  bool span_ok = true;
  std::string span_detail;
  for (std::size_t rho = 1; rho <= nf.nu && span_ok; ++rho) {
    std::vector<Vector> prin;
    for (std::size_t l = 0; l < rho; ++l)
      for (std::size_t b = 0; b < nf.s[l]; ++b) prin.push_back(detail::functional(ag, b, l));
    const Subspace span = Subspace::span(dimA, prin);
    const auto [lo, hi] = nf.block_rows(rho);
    for (std::size_t i = rho - 1; i < n && span_ok; ++i)
      for (std::size_t b = lo; b < hi && span_ok; ++b)
        if (!span.contains(detail::functional(ag, b, i))) {
          span_ok = false;
          span_detail = "first violation in block [" + std::to_string(rho) + "] column " + std::to_string(i + 1);
        }
  }
  add("span_conditions", span_ok, span_detail);

  // Dual pairing and normal-form shape.
  bool pairing = nf.size() == dimA, shape = nf.size() == dimA, member = true;
  std::string shape_detail;
  const Subspace a0 = t.prolongation(0);
  for (std::size_t k = 0; k < nf.size(); ++k) {
    const auto [j, a] = nf.labels[k];
    const Matrix c = adapted_coordinates(nf.normal_basis[k], nf.basis_a, nf.basis_b);
    if (!a0.contains(detail::flatten(nf.normal_basis[k]))) member = false;
    for (std::size_t k2 = 0; k2 < nf.size(); ++k2) {
      const auto [j2, a2] = nf.labels[k2];
      const Rational want = k == k2 ? 1 : 0;
      if (c(a2 - 1, j2 - 1) != want) pairing = false;
    }
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t b = 1; b <= r; ++b) {
        bool allowed;
        if (i < j)
          allowed = false;
        else if (i == j)
          allowed = b == a;
        else
          allowed = b > (i <= nf.nu ? nf.s[i - 1] : 0) && b <= nf.s[j - 1];
        const Rational want = (i == j && b == a) ? 1 : 0;
        if ((!allowed && c(b - 1, i - 1) != 0) || (i == j && c(b - 1, i - 1) != want)) {
          if (shape) shape_detail = "Q_[" + std::to_string(j) + "]," + std::to_string(a) + " at row " +
                                    std::to_string(b) + " column " + std::to_string(i);
          shape = false;
        }
      }
  }
  add("dual_pairing", pairing);
  add("normal_shape", shape, shape_detail);
  add("membership", member);
  return rep;
}

// Builds adapted bases along a certified generic flag, or along `flag` when
// given; the result is verified before it is returned.
inline NormalForm normal_form(const Tableau& t, std::mt19937_64& rng, int attempts = 3, const Matrix* flag = nullptr) {
  const std::size_t n = t.a_dim(), r = t.b_dim();
  const CartanTest ct = t.cartan_test(0, rng);
  if (!ct.involutive) throw NotInvolutive("normal_form: tableau is not involutive");
  std::string last;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const CharacterVector cv = attempt == 0 ? ct.characters : t.characters(0, rng);
    NormalForm nf;
    nf.n = n;
    nf.r = r;
    nf.s = cv.s;
    nf.nu = cv.nu;
    nf.basis_a = flag ? *flag : cv.flag;
    if (flag && (flag->rows() != n || flag->cols() != n)) throw DimensionMismatch("normal_form: flag must be n x n");

    // U_rho = {Q(A_rho) : Q ∈ Ker(A, a_{rho-1})}, decreasing in rho.
    std::vector<Subspace> u;
    Subspace ker = Subspace::whole(t.dim());
    for (std::size_t rho = 1; rho <= nf.nu; ++rho) {
      const Vector arho = nf.basis_a.column(rho - 1);
      Matrix eval(r, t.dim());
      for (std::size_t g = 0; g < t.dim(); ++g) {
        const Vector img = t.generators()[g].apply(arho);
        for (std::size_t b = 0; b < r; ++b) eval(b, g) = img[b];
      }
      std::vector<Vector> imgs;
      for (const auto& kv : ker.basis_vectors()) imgs.push_back(eval.apply(kv));
      u.push_back(Subspace::span(r, imgs));
      ker = intersect(ker, kernel(eval));
    }
    bool nested = true;
    for (std::size_t rho = 1; rho < u.size(); ++rho) nested = nested && u[rho - 1].contains(u[rho]);
    if (!nested) {
      last = "image filtration is not decreasing";
      continue;
    }

    // B adapted to U_nu ⊂ ... ⊂ U_1, completed by standard vectors.
    std::vector<Vector> bcols;
    Subspace have(r);
    auto extend_with = [&](const std::vector<Vector>& cands) {
      for (const auto& v : cands)
        if (!have.contains(v)) {
          bcols.push_back(v);
          std::vector<Vector> cur = bcols;
          have = Subspace::span(r, cur);
        }
    };
    for (std::size_t rho = u.size(); rho-- > 0;) extend_with(u[rho].basis_vectors());
    std::vector<Vector> std_basis;
    for (std::size_t b = 0; b < r; ++b) std_basis.push_back(unit_vector(r, b));
    extend_with(std_basis);
    nf.basis_b = Matrix::from_columns(bcols, r);

    // Principal forms against the generators; invert for the dual basis.
    std::vector<Matrix> ag;
    for (const auto& g : t.generators()) ag.push_back(adapted_coordinates(g, nf.basis_a, nf.basis_b));
    std::vector<Vector> rows;
    for (std::size_t j = 1; j <= nf.nu; ++j)
      for (std::size_t a = 1; a <= nf.s[j - 1]; ++a) {
        rows.push_back(detail::functional(ag, a - 1, j - 1));
        nf.labels.emplace_back(j, a);
      }
    const Matrix p = Matrix::from_rows(rows, t.dim());
    if (rank(p) < t.dim()) {
      last = "principal forms are not a basis of the dual";
      continue;
    }
    const Matrix pinv = inverse(p);
    for (std::size_t k = 0; k < nf.labels.size(); ++k) {
      Matrix q(r, n);
      for (std::size_t g = 0; g < t.dim(); ++g)
        if (pinv(g, k) != 0) q = q + t.generators()[g].scaled(pinv(g, k));
      nf.normal_basis.push_back(q);
      nf.adapted.push_back(adapted_coordinates(q, nf.basis_a, nf.basis_b));
    }
    const NormalFormReport rep = verify_normal_form(t, nf, rng);
    if (rep.all_pass()) return nf;
    for (const auto& c : rep.items)
      if (!c.pass) last = c.name + " " + c.detail;
  }
  throw BadDecomposition("normal_form: construction failed verification: " + last);
}

}  // namespace involute
