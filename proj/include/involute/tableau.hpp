#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "involute/subspace.hpp"
#include "involute/tensor_basis.hpp"

namespace involute {

struct Limits {
  std::size_t max_ambient_dim = 20000;
  int max_degree = 10;
};

// Character vector of a tableau along a generic flag.
struct CharacterVector {
  std::vector<std::size_t> s;  // s_1..s_n
  std::size_t nu = 0;          // last j with s_j != 0 (1-based), 0 if all vanish
  std::size_t principal = 0;   // s_nu, 0 if nu = 0
  bool certified = false;      // all samples agreed
  std::size_t samples = 0;
  std::int64_t bound = 0;      // coefficient range of the accepted draw
  Matrix flag;                 // columns v_1..v_n of the first accepted sample

  std::size_t total() const {
    std::size_t t = 0;
    for (auto x : s) t += x;
    return t;
  }
  std::size_t cartan_bound() const {
    std::size_t b = 0;
    for (std::size_t j = 0; j < s.size(); ++j) b += (j + 1) * s[j];
    return b;
  }
};

inline std::string format_characters(const std::vector<std::size_t>& s) {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < s.size(); ++j) os << (j ? "," : "") << s[j];
  os << ")";
  return os.str();
}

// Cumulative codimensions along a flag: rank of v ↦ (i(v_1)T, ..., i(v_j)T)
// restricted to the space, for j = 1..n.  The space lives in b ⊗ S^{h+1}.
inline std::vector<std::size_t> flag_codimensions(const Subspace& space, std::size_t n, std::size_t b_dim, int h,
                                                  const Matrix& flag) {
  const std::size_t m = space.dim();
  const std::size_t eval_dim = b_dim * SymBasis(n, h).size();
  std::vector<Vector> basis = space.basis_vectors();
  std::vector<std::size_t> out;
  Matrix stacked(0, m);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector v = flag.column(j);
    Matrix block(eval_dim, m);
    for (std::size_t a = 0; a < m; ++a) {
      const Vector c = contract(basis[a], n, b_dim, h, v);
      for (std::size_t r = 0; r < eval_dim; ++r) block(r, a) = c[r];
    }
    stacked = stacked.rows() == 0 ? block : vstack(stacked, block);
    out.push_back(m == 0 ? 0 : rank(stacked));
  }
  return out;
}

inline std::vector<std::size_t> increments(const std::vector<std::size_t>& cumulative) {
  std::vector<std::size_t> s(cumulative.size());
  for (std::size_t j = 0; j < cumulative.size(); ++j) s[j] = cumulative[j] - (j ? cumulative[j - 1] : 0);
  return s;
}

struct SamplingOptions {
  std::size_t samples = 3;
  std::int64_t initial_bound = 16;
  int retries = 4;
};

// Characters of a space in b ⊗ S^{h+1} viewed as a tableau in Hom(a, b ⊗ S^h).
// Flags are drawn with integer entries in [-B, B]; the result is accepted only
// when every sample in one round gives the same codimension sequence.
inline CharacterVector sample_characters(const Subspace& space, std::size_t n, std::size_t b_dim, int h,
                                         std::mt19937_64& rng, const SamplingOptions& opt = {}) {
  if (opt.samples == 0) throw InputError("characters: samples must be at least 1");
  std::int64_t bound = opt.initial_bound;
  std::vector<std::size_t> best;
  for (int round = 0; round <= opt.retries; ++round, bound *= 4) {
    std::vector<std::vector<std::size_t>> seqs;
    Matrix first;
    for (std::size_t t = 0; t < opt.samples; ++t) {
      Matrix flag(n, n);
      do {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) flag(i, j) = random_integer(rng, bound);
      } while (rank(flag) < n);
      if (t == 0) first = flag;
      seqs.push_back(flag_codimensions(space, n, b_dim, h, flag));
    }
    for (const auto& s : seqs)
      if (best.empty() || s > best) best = s;
    bool agree = true;
    for (const auto& s : seqs) agree = agree && s == seqs.front();
    if (!agree) continue;
    CharacterVector cv;
    cv.s = increments(seqs.front());
    for (std::size_t j = 0; j < n; ++j)
      if (cv.s[j] != 0) cv.nu = j + 1;
    cv.principal = cv.nu ? cv.s[cv.nu - 1] : 0;
    cv.certified = true;
    cv.samples = opt.samples;
    cv.bound = bound;
    cv.flag = first;
    for (std::size_t j = 1; j < n; ++j)
      if (cv.s[j] > cv.s[j - 1]) throw Error("characters: sequence not monotone " + format_characters(cv.s));
    if (cv.total() != space.dim()) throw Error("characters: sum differs from dimension");
    return cv;
  }
  throw UnstableGenericity("characters: sampled flags disagree after retries; best codimensions " +
                           format_characters(best) + "; raise --samples or the coefficient range");
}

struct CartanTest {
  int order = 0;  // h such that the test is for A^(h)
  CharacterVector characters;
  std::size_t dim = 0;     // dim A^(h)
  std::size_t dim_next = 0;  // dim A^(h+1)
  std::size_t bound = 0;   // s_1 + 2 s_2 + ... + n s_n
  bool involutive = false;
};

struct InvolutiveIndex {
  int k = -1;
  CharacterVector characters;      // of A^(k)
  std::vector<CartanTest> trajectory;  // tests for h = 0..h_max
};

// A linear subspace of Hom(a, b), a = R^n, b = R^r, with memoized prolongations.
// Elements of b ⊗ S^{h+1} use the coordinates of TensorLayout(n, r, h+1, 0);
// for h = 0 the coordinate (b, i) is the matrix entry Q(b, i).
class Tableau {
 public:
  Tableau() : Tableau(0, 0, {}) {}

  Tableau(std::size_t a_dim, std::size_t b_dim, std::vector<Matrix> generators, Limits limits = {})
      : n_(a_dim), r_(b_dim), generators_(std::move(generators)), limits_(limits), cache_(std::make_shared<Cache>()) {
    std::vector<Vector> flat;
    for (const auto& g : generators_) {
      if (g.rows() != r_ || g.cols() != n_) throw DimensionMismatch("Tableau: generator is not b_dim x a_dim");
      Vector v(r_ * n_);
      for (std::size_t b = 0; b < r_; ++b)
        for (std::size_t i = 0; i < n_; ++i) v[b * n_ + i] = g(b, i);
      flat.push_back(std::move(v));
    }
    Subspace s = Subspace::span(r_ * n_, flat);
    if (s.dim() != generators_.size()) throw InputError("Tableau: generators are linearly dependent");
    cache_->levels.push_back(std::move(s));
  }

  // Tableau spanned by arbitrary (possibly dependent) matrices.
  static Tableau spanned_by(std::size_t a_dim, std::size_t b_dim, const std::vector<Matrix>& mats, Limits limits = {}) {
    std::vector<Vector> flat;
    for (const auto& g : mats) {
      if (g.rows() != b_dim || g.cols() != a_dim) throw DimensionMismatch("Tableau: generator is not b_dim x a_dim");
      Vector v(b_dim * a_dim);
      for (std::size_t b = 0; b < b_dim; ++b)
        for (std::size_t i = 0; i < a_dim; ++i) v[b * a_dim + i] = g(b, i);
      flat.push_back(std::move(v));
    }
    const Subspace s = Subspace::span(b_dim * a_dim, flat);
    std::vector<Matrix> gens;
    for (const auto& v : s.basis_vectors()) gens.push_back(to_matrix(v, a_dim, b_dim));
    return Tableau(a_dim, b_dim, std::move(gens), limits);
  }

  static Matrix to_matrix(const Vector& v, std::size_t a_dim, std::size_t b_dim) {
    Matrix m(b_dim, a_dim);
    for (std::size_t b = 0; b < b_dim; ++b)
      for (std::size_t i = 0; i < a_dim; ++i) m(b, i) = v[b * a_dim + i];
    return m;
  }

  std::size_t a_dim() const { return n_; }
  std::size_t b_dim() const { return r_; }
  std::size_t dim() const { return generators_.size(); }
  const std::vector<Matrix>& generators() const { return generators_; }
  const Limits& limits() const { return limits_; }

  // A^(h) ⊂ b ⊗ S^{h+1}; h = -1 gives b itself.
  const Subspace& prolongation(int h) const {
    if (h < -1) throw InputError("prolongation: order must be at least -1");
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (h == -1) {
      if (!cache_->whole_b) cache_->whole_b = std::make_unique<Subspace>(Subspace::whole(r_));
      return *cache_->whole_b;
    }
    while (static_cast<int>(cache_->levels.size()) <= h) {
      const int next = static_cast<int>(cache_->levels.size());
      cache_->levels.push_back(prolong_once(cache_->levels.back(), next));
    }
    return cache_->levels[static_cast<std::size_t>(h)];
  }

  std::size_t prolongation_dim(int h) const { return prolongation(h).dim(); }

  // Characters of A^(h) as a tableau in Hom(a, b ⊗ S^h).
  CharacterVector characters(int h, std::mt19937_64& rng, const SamplingOptions& opt = {}) const {
    return sample_characters(prolongation(h), n_, r_, h, rng, opt);
  }

  // Codimension increments along the coordinate flag e_1, ..., e_n.
  std::vector<std::size_t> coordinate_flag_sequence(int h = 0) const {
    return increments(flag_codimensions(prolongation(h), n_, r_, h, Matrix::identity(n_)));
  }

  CartanTest cartan_test(int h, std::mt19937_64& rng, const SamplingOptions& opt = {}) const {
    CartanTest t;
    t.order = h;
    t.characters = characters(h, rng, opt);
    t.dim = prolongation_dim(h);
    t.dim_next = prolongation_dim(h + 1);
    t.bound = t.characters.cartan_bound();
    if (t.dim_next > t.bound)
      throw Error("cartan_test: dim A^(h+1) exceeds the Cartan bound; characters are not generic");
    t.involutive = t.dim_next == t.bound;
    return t;
  }

  // Least k <= h_max with A^(k) involutive; every A^(k+j), k+j <= h_max, is
  // also tested.  Throws CapExceeded when no order up to h_max qualifies.
  InvolutiveIndex involutive_index(int h_max, std::mt19937_64& rng, const SamplingOptions& opt = {}) const {
    if (h_max < 0) throw InputError("involutive_index: h_max must be non-negative");
    InvolutiveIndex out;
    for (int h = 0; h <= h_max; ++h) {
      out.trajectory.push_back(cartan_test(h, rng, opt));
      const auto& t = out.trajectory.back();
      if (out.k < 0 && t.involutive) {
        out.k = h;
        out.characters = t.characters;
      } else if (out.k >= 0 && !t.involutive) {
        throw Error("involutive_index: prolongation of an involutive tableau failed the Cartan test at order " +
                    std::to_string(h));
      }
    }
    if (out.k < 0) {
      std::ostringstream os;
      os << "no involutive prolongation up to order " << h_max << "; trajectory:";
      for (const auto& t : out.trajectory)
        os << " h=" << t.order << " dim=" << t.dim << " s=" << format_characters(t.characters.s)
           << " bound=" << t.bound << " next=" << t.dim_next << ";";
      throw CapExceeded(os.str());
    }
    return out;
  }

  // A^(k) as a tableau in Hom(a, A^(k-1)), in the canonical basis of A^(k-1).
  Tableau level(int k) const {
    if (k == 0) return *this;
    const Subspace& ak = prolongation(k);
    const Subspace& prev = prolongation(k - 1);
    std::vector<Matrix> gens;
    for (const auto& t : ak.basis_vectors()) {
      Matrix m(prev.dim(), n_);
      for (std::size_t i = 0; i < n_; ++i) {
        const Vector c = prev.coordinates(contract(t, n_, r_, k, unit_vector(n_, i)));
        for (std::size_t a = 0; a < prev.dim(); ++a) m(a, i) = c[a];
      }
      gens.push_back(std::move(m));
    }
    return Tableau(n_, prev.dim(), std::move(gens), limits_);
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::deque<Subspace> levels;
    std::unique_ptr<Subspace> whole_b;
  };

  // A^(h) from A^(h-1), h >= 1: unknowns Q(e_i) = sum_a q_{a,i} B_a subject to
  // i(e_j) Q(e_i) = i(e_i) Q(e_j) for i < j.
  Subspace prolong_once(const Subspace& prev, int h) const {
    const SymBasis target(n_, h + 1);
    if (r_ * target.size() > limits_.max_ambient_dim)
      throw CapExceeded("prolongation: ambient dimension " + std::to_string(r_ * target.size()) + " exceeds cap " +
                        std::to_string(limits_.max_ambient_dim));
    const std::size_t m = prev.dim();
    if (m == 0 || n_ == 0) return Subspace(r_ * target.size());
    const std::size_t low = r_ * SymBasis(n_, h - 1).size();
    std::vector<std::vector<Vector>> con(n_);  // con[j][a] = i(e_j) B_a
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t a = 0; a < m; ++a)
        con[j].push_back(contract(prev.basis_vector(a), n_, r_, h - 1, unit_vector(n_, j)));
    auto var = [&](std::size_t a, std::size_t i) { return a * n_ + i; };
    Matrix sys(n_ * (n_ - 1) / 2 * low, m * n_);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j, row += low)
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t c = 0; c < low; ++c) {
            sys(row + c, var(a, i)) += con[j][a][c];
            sys(row + c, var(a, j)) -= con[i][a][c];
          }
    const SymBasis src(n_, h);
    const std::vector<Vector> prev_basis = prev.basis_vectors();
    std::vector<Vector> gens;
    for (const auto& q : kernel_basis(sys)) {
      Vector t(r_ * target.size(), Rational(0));
      for (std::size_t kk = 0; kk < target.size(); ++kk) {
        const MultiIndex& K = target[kk];
        const std::size_t i = static_cast<std::size_t>(K.front());
        const std::size_t I = src.index_of(MultiIndex(K.begin() + 1, K.end()));
        for (std::size_t a = 0; a < m; ++a) {
          if (q[var(a, i)] == 0) continue;
          const Vector& b = prev_basis[a];
          for (std::size_t bb = 0; bb < r_; ++bb) t[bb * target.size() + kk] += q[var(a, i)] * b[bb * src.size() + I];
        }
      }
      gens.push_back(std::move(t));
    }
    return Subspace::span(r_ * target.size(), gens);
  }

  std::size_t n_, r_;
  std::vector<Matrix> generators_;
  Limits limits_;
  std::shared_ptr<Cache> cache_;
};

// Cross-check: A^(h) = (A^(h-1) ⊗ a*) ∩ (b ⊗ S^{h+1}), both embedded in
// b ⊗ S^h ⊗ a* by T ↦ (i(e_i) T)_i.
inline Subspace prolong_via_intersection(const Tableau& t, int h) {
  const std::size_t n = t.a_dim(), r = t.b_dim();
  const Subspace& prev = t.prolongation(h - 1);
  const SymBasis mid(n, h), top(n, h + 1);
  const std::size_t amb = r * mid.size() * n;
  auto slot = [&](std::size_t b, std::size_t I, std::size_t i) { return (b * mid.size() + I) * n + i; };
  std::vector<Vector> left;
  for (const auto& v : prev.basis_vectors())
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(amb, Rational(0));
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t I = 0; I < mid.size(); ++I) e[slot(b, I, i)] = v[b * mid.size() + I];
      left.push_back(std::move(e));
    }
  std::vector<Vector> right;
  for (std::size_t b = 0; b < r; ++b)
    for (std::size_t K = 0; K < top.size(); ++K) {
      Vector e(amb, Rational(0));
      for (std::size_t I = 0; I < mid.size(); ++I)
        for (std::size_t i = 0; i < n; ++i)
          if (top.index_of(SymBasis::with(mid[I], static_cast<int>(i))) == K) e[slot(b, I, i)] = 1;
      right.push_back(std::move(e));
    }
  const Subspace meet = intersect(Subspace::span(amb, left), Subspace::span(amb, right));
  // Pull back to b ⊗ S^{h+1}: T_{b,K} = e[slot(b, K \ K_0, K_0)].
  std::vector<Vector> gens;
  for (const auto& e : meet.basis_vectors()) {
    Vector v(r * top.size(), Rational(0));
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t K = 0; K < top.size(); ++K) {
        const MultiIndex& k = top[K];
        v[b * top.size() + K] = e[slot(b, mid.index_of(MultiIndex(k.begin() + 1, k.end())), static_cast<std::size_t>(k[0]))];
      }
    gens.push_back(std::move(v));
  }
  return Subspace::span(r * top.size(), gens);
}

}  // namespace involute
