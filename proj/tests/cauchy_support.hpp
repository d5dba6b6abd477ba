#pragma once

#include "involute/cauchy.hpp"
#include "wave_oracle.hpp"

namespace cauchy_support {

using namespace involute;

// Random data of the right shape: constants for the lower levels and, for
// each block, a polynomial of degree <= deg in the first ρ variables.
inline CauchyData random_cauchy_data(const CauchyContext& cx, std::mt19937_64& rng, int deg) {
  CauchyData data;
  data.x0 = random_vector(rng, cx.n(), 3);
  for (int h = 0; h < cx.k; ++h) data.p_const.push_back(random_vector(rng, cx.tower.coords.dim(h), 3));
  for (std::size_t rho = 1; rho <= cx.nf.nu; ++rho) {
    PolyMap p(rho, cx.nf.s[rho - 1]);
    for (std::size_t a = 0; a < p.size(); ++a)
      for (int d = 0; d <= deg; ++d)
        for (const auto& m : monomials_of_degree(rho, d)) p[a].add_term(m, random_rational(rng, 4, 3));
    data.p_blocks.push_back(p);
  }
  return data;
}

inline Matrix wave_flag() {
  Matrix f(2, 2);
  f(0, 0) = 1;
  f(1, 0) = 1;
  f(1, 1) = 1;
  return f;
}

// Cauchy data on the line t(1,1) taken from the oracle series.
inline CauchyData wave_data_from_oracle(const CauchyContext& cx, const wave_oracle::Series& s) {
  const auto diag = wave_oracle::on_diagonal(s);
  const Matrix ninv = inverse(cx.normal);
  PolyMap block(1, cx.dim_k());
  for (std::size_t e = 0; e < cx.dim_k(); ++e) {
    Polynomial p(1);
    for (std::size_t c = 0; c < cx.dim_k(); ++c)
      if (ninv(e, c) != 0) p += diag[c] * ninv(e, c);
    block[cx.nf.labels[e].second - 1] = p;
  }
  CauchyData data;
  data.x0 = Vector(2, Rational(0));
  data.p_blocks = {block};
  return data;
}

}  // namespace cauchy_support
