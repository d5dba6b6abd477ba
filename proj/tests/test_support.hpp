#pragma once

#include <random>
#include <vector>

#include "involute/tableau.hpp"

namespace testing_support {

using namespace involute;

inline Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> rs;
  std::size_t cols = 0;
  for (auto r : rows) {
    rs.push_back(vec(r));
    cols = r.size();
  }
  return Matrix::from_rows(rs, cols);
}

inline Matrix elementary(std::size_t r, std::size_t n, std::size_t b, std::size_t i) {
  Matrix m(r, n);
  m(b, i) = 1;
  return m;
}

inline Tableau full_tableau(std::size_t n, std::size_t r) {
  std::vector<Matrix> g;
  for (std::size_t b = 0; b < r; ++b)
    for (std::size_t i = 0; i < n; ++i) g.push_back(elementary(r, n, b, i));
  return Tableau(n, r, g);
}

inline Tableau zero_tableau(std::size_t n, std::size_t r) { return Tableau(n, r, {}); }

// span{e1*⊗f1} ⊂ Hom(R^2, R^2).
inline Tableau rank_one_tableau() { return Tableau(2, 2, {elementary(2, 2, 0, 0)}); }

// span{e1*⊗f1, e2*⊗f2} ⊂ Hom(R^2, R^2).
inline Tableau diagonal_tableau() { return Tableau(2, 2, {elementary(2, 2, 0, 0), elementary(2, 2, 1, 1)}); }

// Random tableau with small integer generators; dimension at most r*n.
inline Tableau random_tableau(std::mt19937_64& rng, std::size_t n, std::size_t r, std::size_t gens, long bound = 2) {
  std::vector<Matrix> ms;
  std::uniform_int_distribution<long> e(-bound, bound);
  std::bernoulli_distribution sparse(0.5);
  for (std::size_t g = 0; g < gens; ++g) {
    Matrix m(r, n);
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t i = 0; i < n; ++i) m(b, i) = sparse(rng) ? 0 : e(rng);
    ms.push_back(m);
  }
  return Tableau::spanned_by(n, r, ms);
}

// A corpus mixing random tableaux with constructed ones.
inline std::vector<Tableau> tableau_corpus(std::uint64_t seed, std::size_t random_count) {
  std::mt19937_64 rng(seed);
  std::vector<Tableau> out = {full_tableau(2, 1), full_tableau(3, 2), zero_tableau(2, 2), rank_one_tableau(),
                              diagonal_tableau()};
  std::uniform_int_distribution<std::size_t> nd(1, 3), rd(1, 4);
  while (out.size() < random_count + 5) {
    const std::size_t n = nd(rng), r = rd(rng);
    std::uniform_int_distribution<std::size_t> gd(1, std::min<std::size_t>(r * n, 4));
    out.push_back(random_tableau(rng, n, r, gd(rng)));
  }
  return out;
}

}  // namespace testing_support
