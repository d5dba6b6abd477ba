#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

#include "involute/matrix.hpp"

namespace involute {

using MultiIndex = std::vector<int>;

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Rational factorial(int k) {
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Weakly increasing multi-indices of length h over {0..n-1}, lexicographic.
// The coordinate attached to I is the value T(e_{i1},...,e_{ih}) of the
// symmetric form, i.e. basis vectors are unnormalized symmetrizations.
class SymBasis {
 public:
  SymBasis() = default;
  SymBasis(std::size_t n, int h) : n_(n), h_(h) {
    MultiIndex idx(static_cast<std::size_t>(h));
    auto rec = [&](auto&& self, std::size_t pos, int lo) -> void {
      if (pos == idx.size()) {
        lookup_.emplace(idx, list_.size());
        list_.push_back(idx);
        return;
      }
      for (int v = lo; v < static_cast<int>(n_); ++v) {
        idx[pos] = v;
        self(self, pos + 1, v);
      }
    };
    if (h >= 0) rec(rec, 0, 0);
  }

  std::size_t n() const { return n_; }
  int degree() const { return h_; }
  std::size_t size() const { return list_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return list_[i]; }
  const std::vector<MultiIndex>& indices() const { return list_; }

  // Position of a multi-index given in any order.
  std::size_t index_of(MultiIndex idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = lookup_.find(idx);
    if (it == lookup_.end()) throw DimensionMismatch("SymBasis::index_of: not a basis multi-index");
    return it->second;
  }

  // sort(I ∪ {k}).
  static MultiIndex with(const MultiIndex& idx, int k) {
    MultiIndex r = idx;
    r.insert(std::upper_bound(r.begin(), r.end(), k), k);
    return r;
  }

  // Squared norm of the basis vector under the full-tensor inner product.
  Rational norm2(std::size_t i) const {
    Rational r = factorial(h_);
    const auto& idx = list_[i];
    for (std::size_t a = 0; a < idx.size();) {
      std::size_t b = a;
      while (b < idx.size() && idx[b] == idx[a]) ++b;
      r /= factorial(static_cast<int>(b - a));
      a = b;
    }
    return r;
  }

 private:
  std::size_t n_ = 0;
  int h_ = 0;
  std::vector<MultiIndex> list_;
  std::map<MultiIndex, std::size_t> lookup_;
};

// Strictly increasing p-subsets of {0..n-1}, lexicographic.  Coordinates
// are the values w(e_{j1},...,e_{jp}) of the alternating form.
class ExtBasis {
 public:
  ExtBasis() = default;
  ExtBasis(std::size_t n, int p) : n_(n), p_(p) {
    MultiIndex idx(static_cast<std::size_t>(std::max(p, 0)));
    auto rec = [&](auto&& self, std::size_t pos, int lo) -> void {
      if (pos == idx.size()) {
        lookup_.emplace(idx, list_.size());
        list_.push_back(idx);
        return;
      }
      for (int v = lo; v < static_cast<int>(n_); ++v) {
        idx[pos] = v;
        self(self, pos + 1, v + 1);
      }
    };
    if (p >= 0 && static_cast<std::size_t>(p) <= n) rec(rec, 0, 0);
  }

  std::size_t n() const { return n_; }
  int degree() const { return p_; }
  std::size_t size() const { return list_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return list_[i]; }
  const std::vector<MultiIndex>& indices() const { return list_; }

  std::size_t index_of(const MultiIndex& sorted_idx) const {
    auto it = lookup_.find(sorted_idx);
    if (it == lookup_.end()) throw DimensionMismatch("ExtBasis::index_of: not a basis subset");
    return it->second;
  }

  Rational norm2(std::size_t) const { return factorial(p_); }

 private:
  std::size_t n_ = 0;
  int p_ = 0;
  std::vector<MultiIndex> list_;
  std::map<MultiIndex, std::size_t> lookup_;
};

// Coordinates of b ⊗ S^q ⊗ Λ^p, index (b * |S^q| + I) * |Λ^p| + J.
struct TensorLayout {
  std::size_t b_dim = 0;
  SymBasis sym;
  ExtBasis ext;

  TensorLayout() = default;
  TensorLayout(std::size_t n, std::size_t b, int q, int p) : b_dim(b), sym(n, q), ext(n, p) {}

  std::size_t size() const { return b_dim * sym.size() * ext.size(); }
  std::size_t index(std::size_t b, std::size_t i, std::size_t j) const { return (b * sym.size() + i) * ext.size() + j; }

  // Diagonal of the Gram matrix (the basis is orthogonal).
  Vector gram_diagonal() const {
    Vector g(size());
    for (std::size_t b = 0; b < b_dim; ++b)
      for (std::size_t i = 0; i < sym.size(); ++i)
        for (std::size_t j = 0; j < ext.size(); ++j) g[index(b, i, j)] = sym.norm2(i) * ext.norm2(j);
    return g;
  }
};

// i(X) : b ⊗ S^{h+1} -> b ⊗ S^h, coordinates (i(X)T)_{b,J} = sum_k X_k T_{b, J ∪ k}.
inline Vector contract(const Vector& t, std::size_t n, std::size_t b_dim, int h, const Vector& x) {
  if (h < 0) throw DimensionMismatch("contract: source degree must be at least 1");
  if (x.size() != n) throw DimensionMismatch("contract: vector length differs from n");
  const SymBasis src(n, h + 1), dst(n, h);
  if (t.size() != b_dim * src.size()) throw DimensionMismatch("contract: tensor length mismatch");
  Vector out(b_dim * dst.size(), Rational(0));
  for (std::size_t j = 0; j < dst.size(); ++j)
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k] == 0) continue;
      const std::size_t s = src.index_of(SymBasis::with(dst[j], static_cast<int>(k)));
      for (std::size_t b = 0; b < b_dim; ++b) out[b * dst.size() + j] += x[k] * t[b * src.size() + s];
    }
  return out;
}

// Matrix of i(e_k) : b ⊗ S^{h+1} -> b ⊗ S^h.
inline Matrix contraction_matrix(std::size_t n, std::size_t b_dim, int h, std::size_t k) {
  const SymBasis src(n, h + 1), dst(n, h);
  Matrix m(b_dim * dst.size(), b_dim * src.size());
  for (std::size_t j = 0; j < dst.size(); ++j) {
    const std::size_t s = src.index_of(SymBasis::with(dst[j], static_cast<int>(k)));
    for (std::size_t b = 0; b < b_dim; ++b) m(b * dst.size() + j, b * src.size() + s) = 1;
  }
  return m;
}

// Matrix of δ^{q,p} : b ⊗ S^q ⊗ Λ^p -> b ⊗ S^{q-1} ⊗ Λ^{p+1} over the
// declared bases, (δφ)(X_1..X_{p+1}) = sum_m (-1)^{m+1} i(X_m) φ(..X̂_m..).
inline Matrix koszul_delta_full(std::size_t n, std::size_t b_dim, int q, int p) {
  const TensorLayout src(n, b_dim, q, p);
  // The target space is zero when q = 0 or p = n.
  if (q <= 0 || p + 1 > static_cast<int>(n)) return Matrix(0, src.size());
  const TensorLayout dst(n, b_dim, q - 1, p + 1);
  Matrix m(dst.size(), src.size());
  for (std::size_t i = 0; i < dst.sym.size(); ++i)
    for (std::size_t j = 0; j < dst.ext.size(); ++j) {
      const MultiIndex& k = dst.ext[j];
      for (std::size_t mpos = 0; mpos < k.size(); ++mpos) {
        const std::size_t si = src.sym.index_of(SymBasis::with(dst.sym[i], k[mpos]));
        MultiIndex rest = k;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(mpos));
        const std::size_t sj = src.ext.index_of(rest);
        const int sign = mpos % 2 == 0 ? 1 : -1;
        for (std::size_t b = 0; b < b_dim; ++b) m(dst.index(b, i, j), src.index(b, si, sj)) += sign;
      }
    }
  return m;
}

}  // namespace involute
