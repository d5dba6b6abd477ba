#include <gtest/gtest.h>

#include "involute/systems.hpp"
#include "test_support.hpp"

using namespace involute;
using namespace testing_support;

namespace {

bool all_pass(const std::vector<Certificate>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

bool all_pass(const std::vector<StructureItem>& items) {
  for (const auto& i : items)
    if (!i.pass) return false;
  return true;
}

// Full Hom(R^3, R^1) with a single nonzero component Φ_12 = x_v.
System full_r3_system(std::size_t v) {
  const Tableau t = full_tableau(3, 1);
  PolyMap phi(6, 3);
  phi[0] = Polynomial::variable(6, v);
  return make_system(t, phi);
}

}  // namespace

TEST(CartanDecomposition, Sl3Dimensions) {
  const auto cd = builtin::sl3_cartan();
  EXPECT_EQ(cd.g0.cols(), 3u);
  EXPECT_EQ(cd.m.cols(), 5u);
  EXPECT_EQ(cd.a.cols(), 2u);
  EXPECT_EQ(cd.b.cols(), 3u);
  EXPECT_EQ(cd.ga.cols(), 0u);
  EXPECT_EQ(cd.p.cols(), 3u);
}

TEST(CartanDecomposition, KillingOrthogonalityAndBrackets) {
  const auto cd = builtin::sl3_cartan();
  EXPECT_TRUE((cd.g0.transpose() * cd.killing * cd.m).is_zero());
  EXPECT_TRUE((cd.a.transpose() * cd.killing * cd.b).is_zero());
  EXPECT_EQ(definiteness(restrict_form(cd.killing, cd.g0)), -1);
  EXPECT_EQ(definiteness(restrict_form(cd.killing, cd.m)), 1);
  const Subspace g0 = Subspace::span(8, CartanDecomposition::columns(cd.g0));
  const Subspace m = Subspace::span(8, CartanDecomposition::columns(cd.m));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_TRUE(g0.contains(cd.g.bracket(cd.m.column(i), cd.m.column(j))));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_TRUE(m.contains(cd.g.bracket(cd.g0.column(i), cd.m.column(j))));
}

TEST(CartanDecomposition, RejectsNonSubalgebra) {
  // span{S12} is not closed under the Killing complement relations.
  EXPECT_THROW(cartan_decomposition(builtin::sl3(), {unit_vector(8, 3)}, {}), BadDecomposition);
  // a must be abelian and maximal.
  EXPECT_THROW(cartan_decomposition(builtin::sl3(), {unit_vector(8, 0), unit_vector(8, 1), unit_vector(8, 2)},
                                    {unit_vector(8, 6)}),
               BadDecomposition);
}

TEST(LieAlgebra, JacobiViolationIsReported) {
  LieAlgebra g(3);
  g.set_bracket(0, 1, unit_vector(3, 2));
  g.set_bracket(0, 2, unit_vector(3, 0));
  EXPECT_TRUE(g.is_antisymmetric());
  EXPECT_THROW(g.check_jacobi(), JacobiViolation);
  EXPECT_THROW(build_wavemap_system(g), JacobiViolation);
}

TEST(GG0System, Sl3TableauIsInvolutive) {
  const auto cd = builtin::sl3_cartan();
  const System sys = build_gg0_system(cd);
  EXPECT_EQ(sys.n(), 2u);
  EXPECT_EQ(sys.r(), 3u);
  EXPECT_EQ(sys.s(), 3u);
  std::mt19937_64 rng(1);
  const auto idx = sys.tableau.involutive_index(2, rng);
  EXPECT_EQ(idx.k, 0);
  EXPECT_EQ(idx.characters.s, (std::vector<std::size_t>{3, 0}));
  // s_1 = dim m - n.
  EXPECT_EQ(idx.characters.s[0], cd.m.cols() - cd.n());
  EXPECT_EQ(sys.tableau.prolongation_dim(1), cd.p.cols());
}

TEST(GG0System, Sl3RegularityCertificates) {
  const System sys = build_gg0_system(builtin::sl3_cartan());
  const Certificate b02 = check_phi_in_B02(sys);
  EXPECT_TRUE(b02.pass) << b02.detail;
  EXPECT_EQ(b02.method, "symbolic");
  const auto tor = check_torsion_condition(sys);
  ASSERT_EQ(tor.size(), 2u);
  EXPECT_TRUE(all_pass(tor));
  EXPECT_TRUE(gg0_bracket_identity(builtin::sl3_cartan(), sys));
}

TEST(GG0System, Sl2IsDegenerate) {
  const System sys = build_gg0_system(builtin::sl2_cartan());
  EXPECT_EQ(sys.n(), 1u);
  EXPECT_EQ(sys.phi.size(), 0u);
  std::mt19937_64 rng(2);
  EXPECT_TRUE(sys.tableau.cartan_test(0, rng).involutive);
  EXPECT_EQ(check_phi_in_B02(sys).method, "trivial");
  const TowerData td = build_s_chain(sys, 1);
  EXPECT_TRUE(all_pass(td.certificates));
  EXPECT_TRUE(all_pass(verify_structure_equations(td)));
}

TEST(GG0System, BracketIdentityFailsForWrongPhi) {
  const auto cd = builtin::sl3_cartan();
  System sys = build_gg0_system(cd);
  sys.phi = sys.phi.scaled(2);
  EXPECT_FALSE(gg0_bracket_identity(cd, sys));
}

TEST(WaveMapSystem, Su2ProlongationDims) {
  const System sys = build_wavemap_system(builtin::su2());
  EXPECT_EQ(sys.n(), 2u);
  EXPECT_EQ(sys.r(), 6u);
  for (int h = 0; h <= 2; ++h) EXPECT_EQ(sys.tableau.prolongation_dim(h), 6u) << "h=" << h;
  EXPECT_EQ(sys.vars.front(), "x");
  EXPECT_EQ(sys.vars.back(), "v3");
}

TEST(WaveMapSystem, Su2PhiIsQuadraticBracket) {
  const auto g = builtin::su2();
  const System sys = build_wavemap_system(g);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    const Vector u = random_vector(rng, 3, 5), v = random_vector(rng, 3, 5);
    Vector pt = {Rational(0), Rational(0)};
    pt.insert(pt.end(), u.begin(), u.end());
    pt.insert(pt.end(), v.begin(), v.end());
    const Vector val = sys.phi.eval(pt);
    const Vector br = g.bracket(u, v);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(val[k], -br[k]);
      EXPECT_EQ(val[3 + k], -br[k]);
    }
  }
}

TEST(WaveMapSystem, Su2CertificatesAndTower) {
  const System sys = build_wavemap_system(builtin::su2());
  EXPECT_TRUE(check_phi_in_B02(sys).pass);
  EXPECT_TRUE(all_pass(check_torsion_condition(sys)));
  const TowerData td = build_s_chain(sys, 2);
  ASSERT_EQ(td.s_chain.size(), 3u);
  for (const auto& c : td.certificates) EXPECT_TRUE(c.pass) << c.name;
  const auto items = verify_structure_equations(td);
  EXPECT_EQ(items.size(), 4u);
  for (const auto& i : items) EXPECT_TRUE(i.pass) << i.label << " " << i.detail;
}

TEST(WaveMapSystem, AbelianHasZeroPhiAndZeroChain) {
  const System sys = build_wavemap_system(builtin::abelian(2));
  EXPECT_TRUE(sys.phi.is_zero());
  const TowerData td = build_s_chain(sys, 1);
  for (const auto& s : td.s_chain) EXPECT_TRUE(s.is_zero());
  EXPECT_TRUE(all_pass(verify_structure_equations(td)));
}

// δφ(e_x, e_y) = i(e_x)φ(e_y) - i(e_y)φ(e_x) on elements of the form
// σ(w) = (X2(w) dy, X1(w) dx) and μ(w) = (X2(w) dy⊙dy, X1(w) dx⊙dx).
TEST(WaveMapSystem, DeltaOnBasisInputsFollowsDefinition) {
  const std::size_t d = 3, r = 6;
  std::mt19937_64 rng(4);
  Vector x[2][2];
  for (auto& row : x)
    for (auto& e : row) e = random_vector(rng, d, 7);
  {
    const TensorLayout src(2, r, 1, 1), dst(2, r, 0, 2);
    Vector t(src.size(), Rational(0));
    for (std::size_t w = 0; w < 2; ++w)
      for (std::size_t k = 0; k < d; ++k) {
        t[src.index(k, 1, w)] = x[1][w][k];
        t[src.index(d + k, 0, w)] = x[0][w][k];
      }
    const Vector out = koszul_delta_full(2, r, 1, 1).apply(t);
    for (std::size_t k = 0; k < d; ++k) {
      EXPECT_EQ(out[dst.index(k, 0, 0)], -x[1][0][k]);
      EXPECT_EQ(out[dst.index(d + k, 0, 0)], x[0][1][k]);
    }
  }
  {
    const TensorLayout src(2, r, 2, 1), dst(2, r, 1, 2);
    const std::size_t xx = src.sym.index_of({0, 0}), yy = src.sym.index_of({1, 1});
    Vector t(src.size(), Rational(0));
    for (std::size_t w = 0; w < 2; ++w)
      for (std::size_t k = 0; k < d; ++k) {
        t[src.index(k, yy, w)] = x[1][w][k];
        t[src.index(d + k, xx, w)] = x[0][w][k];
      }
    const Vector out = koszul_delta_full(2, r, 2, 1).apply(t);
    for (std::size_t k = 0; k < d; ++k) {
      EXPECT_EQ(out[dst.index(k, 1, 0)], -x[1][0][k]);
      EXPECT_EQ(out[dst.index(d + k, 0, 0)], x[0][1][k]);
      EXPECT_EQ(out[dst.index(k, 0, 0)], 0);
      EXPECT_EQ(out[dst.index(d + k, 1, 0)], 0);
    }
  }
}

TEST(WaveMapSystem, Su2SpencerSurjectivity) {
  const System sys = build_wavemap_system(builtin::su2());
  EXPECT_EQ(cohomology_dim(sys.tableau, 0, 2), 0u);
  EXPECT_EQ(cohomology_dim(sys.tableau, 1, 2), 0u);
  EXPECT_TRUE(is_two_acyclic(sys.tableau, 3));
}

TEST(Torsion, FullTableauDetectsCyclicDerivative) {
  const System bad = full_r3_system(2);
  EXPECT_TRUE(check_phi_in_B02(bad).pass);
  const auto tb = check_torsion_condition(bad);
  EXPECT_FALSE(tb[0].pass);
  EXPECT_FALSE(tb[1].pass);
  EXPECT_NE(tb[0].detail.find("(1,2,3)"), std::string::npos);

  const System good = full_r3_system(0);
  const auto tg = check_torsion_condition(good);
  EXPECT_TRUE(tg[0].pass) << tg[0].detail;
  EXPECT_TRUE(tg[1].pass) << tg[1].detail;
}

TEST(Torsion, TrivialBelowThreeVariables) {
  const auto tor = check_torsion_condition(build_wavemap_system(builtin::su2()));
  EXPECT_EQ(tor[0].method, "trivial (n < 3)");
}

TEST(PhiInB02, FailsOutsideImage) {
  // Rank-one tableau on R^2 -> R^2: δ^{1,1} is not onto.
  const Tableau t = rank_one_tableau();
  PolyMap phi(3, 2);
  phi[1] = Polynomial::constant(3, 1);
  const System sys = make_system(t, phi);
  const Certificate c = check_phi_in_B02(sys);
  EXPECT_FALSE(c.pass);
  EXPECT_FALSE(c.detail.empty());
}

TEST(PhiInB02, SampledFallbackAgrees) {
  const System sys = build_wavemap_system(builtin::su2());
  const Certificate c = check_phi_in_B02(sys, 6, 11, 0);
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.method.rfind("sampled", 0), 0u);
}

TEST(SChain, DeterministicAndUnique) {
  const System sys = build_gg0_system(builtin::sl3_cartan());
  const TowerData a = build_s_chain(sys, 1), b = build_s_chain(sys, 1);
  ASSERT_EQ(a.s_chain.size(), b.s_chain.size());
  for (std::size_t i = 0; i < a.s_chain.size(); ++i) EXPECT_EQ(a.s_chain[i], b.s_chain[i]);
  // δ is injective on B_{q,1}, so δS' = δS with S' in B_{q,1} forces S' = S.
  for (int q = 1; q <= 2; ++q) {
    const HarmonicSplit split = harmonic_split(sys.tableau, q, 1);
    const Matrix d = spencer_delta(sys.tableau, q, 1);
    EXPECT_EQ(rank(d * split.coexact.basis_columns()), split.coexact.dim());
  }
}

TEST(SChain, FirstTermSatisfiesDelta) {
  const System sys = build_wavemap_system(builtin::su2());
  const TowerData td = build_s_chain(sys, 0);
  const PolyMap phi = sys.phi.extended(td.coords.num_vars());
  EXPECT_EQ(apply_delta(2, 6, 1, 1, td.s_chain[0]), phi);
}

TEST(SChain, RequiresTwoAcyclicity) {
  // span{identity} in Hom(R^2, R^2) has H^{1,2} != 0.
  const System sys = make_system(Tableau(2, 2, {mat({{1, 0}, {0, 1}})}), PolyMap());
  ASSERT_FALSE(is_two_acyclic(sys.tableau, 1));
  EXPECT_THROW(build_s_chain(sys, 0), NotTwoAcyclic);
}

TEST(StructureEquations, CorruptedChainFails) {
  const System sys = build_wavemap_system(builtin::su2());
  TowerData td = build_s_chain(sys, 1);
  ASSERT_TRUE(all_pass(verify_structure_equations(td)));
  const std::size_t nv = td.coords.num_vars();
  // Slot (b, i, w) = (first component of the second copy, x, x) lies in A.
  const std::size_t slot = TensorLayout(2, 6, 1, 1).index(3, 0, 0);
  td.s_chain[0][slot] += Polynomial::variable(nv, 0) * Polynomial::variable(nv, 1);
  EXPECT_FALSE(all_pass(verify_structure_equations(td)));
}

TEST(StructureEquations, Sl3ThroughOrderTwo) {
  const System sys = build_gg0_system(builtin::sl3_cartan());
  const TowerData td = build_s_chain(sys, 2);
  for (const auto& c : td.certificates) EXPECT_TRUE(c.pass) << c.name;
  const auto items = verify_structure_equations(td);
  EXPECT_EQ(items.size(), 4u);
  EXPECT_TRUE(all_pass(items));
}

TEST(MakeSystem, ValidatesShapes) {
  const Tableau t = full_tableau(2, 1);
  EXPECT_THROW(make_system(t, PolyMap(3, 1)), DimensionMismatch);
  EXPECT_THROW(make_system(t, PolyMap(4, 2)), DimensionMismatch);
  EXPECT_NO_THROW(make_system(t, PolyMap(4, 1)));
  EXPECT_THROW(make_system(t, PolyMap(4, 1), {"x"}), DimensionMismatch);
}
