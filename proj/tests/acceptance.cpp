// Acceptance run: one PASS/FAIL line per criterion, with runtime against a
// pinned budget.  Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cauchy_support.hpp"
#include "involute/cauchy.hpp"
#include "involute/guillemin.hpp"
#include "involute/spencer.hpp"
#include "involute/systems.hpp"
#include "test_support.hpp"
#include "wave_oracle.hpp"

using namespace involute;
using namespace testing_support;
using namespace cauchy_support;

namespace {

// Runtime budgets in seconds.
constexpr double kBudget[11] = {0, 1, 5, 5, 30, 60, 10, 10, 60, 60, 10};
// Every comparison below is exact; the only tolerance is on runtime.
constexpr std::size_t kCorpusRandom = 25;
constexpr std::uint64_t kSeed = 20260;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string chars(const std::vector<std::size_t>& s) { return format_characters(s); }

std::vector<Tableau> corpus() {
  std::vector<Tableau> out = tableau_corpus(kSeed, kCorpusRandom);
  out.push_back(build_wavemap_system(builtin::su2()).tableau);
  out.push_back(build_gg0_system(builtin::sl3_cartan()).tableau);
  return out;
}

Outcome c1() {
  Outcome o;
  const Tableau t = build_wavemap_system(builtin::su2()).tableau;
  std::vector<std::size_t> dims;
  for (int h = 0; h <= 2; ++h) dims.push_back(t.prolongation_dim(h));
  o.require(dims == std::vector<std::size_t>{6, 6, 6}, "dims " + chars(dims));
  o.detail = o.pass ? "dim A^(0..2) = 6 6 6" : o.detail;
  return o;
}

Outcome c2() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 2);
  const Tableau t = build_wavemap_system(builtin::su2()).tableau;
  const auto table = spencer_table(t, 1, 2);
  const std::size_t h02 = table.at({0, 2}).h_dim, h12 = table.at({1, 2}).h_dim;
  o.require(h02 == 0, "H^{0,2} = " + std::to_string(h02));
  o.require(h12 == 0, "H^{1,2} = " + std::to_string(h12));
  const InvolutiveIndex idx = t.involutive_index(4, rng);
  const auto s1 = t.characters(1, rng).s;
  o.require(s1 == std::vector<std::size_t>{6, 0}, "characters of A^(1) " + chars(s1));
  const auto generic = t.characters(0, rng).s;
  const auto coord = t.coordinate_flag_sequence(0);
  const std::string info = "k=" + std::to_string(idx.k) + " s=" + chars(idx.characters.s) + ", A^(1) s=" + chars(s1) +
                           ", generic A^(0) s=" + chars(generic) + ", coordinate flag " + chars(coord);
  o.detail = o.detail.empty() ? info : o.detail + "; " + info;
  return o;
}

Outcome c3() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 3);
  const CartanDecomposition cd = builtin::sl3_cartan();
  const System sys = build_gg0_system(cd);
  const InvolutiveIndex idx = sys.tableau.involutive_index(4, rng);
  o.require(idx.k == 0, "k = " + std::to_string(idx.k));
  o.require(idx.characters.s == std::vector<std::size_t>{3, 0}, "s = " + chars(idx.characters.s));
  o.require(sys.tableau.prolongation_dim(1) == cd.p.cols(), "dim A^(1) != dim p");
  const Certificate b02 = check_phi_in_B02(sys, 8, kSeed);
  o.require(b02.pass && b02.method == "symbolic", "Phi in B02: " + b02.method + " " + b02.detail);
  for (const auto& c : check_torsion_condition(sys)) o.require(c.pass, c.name + ": " + c.detail);
  if (o.pass) o.detail = "k=0, s=(3,0), dim A^(1) = dim p = 3, certificates exact";
  return o;
}

Outcome c4() {
  Outcome o;
  std::size_t cells = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t b = 1; b <= 2; ++b)
      for (int q = 0; q <= 3; ++q)
        for (int p = 0; p <= static_cast<int>(n); ++p) {
          const std::string where = "n=" + std::to_string(n) + " b=" + std::to_string(b) + " q=" + std::to_string(q) +
                                    " p=" + std::to_string(p);
          const Matrix d1 = koszul_delta_full(n, b, q, p);
          if (q >= 1 && p + 1 <= static_cast<int>(n)) {
            const Matrix d2 = koszul_delta_full(n, b, q - 1, p + 1);
            if (d2.rows() > 0) o.require((d2 * d1).is_zero(), "delta^2 != 0 at " + where);
          }
          ++cells;
          if (q == 0 && p == 0) continue;
          const std::size_t dim = TensorLayout(n, b, q, p).size();
          const std::size_t below = p >= 1 ? rank(koszul_delta_full(n, b, q + 1, p - 1)) : 0;
          o.require(rank(d1) + below == dim, "not exact at " + where);
        }
  if (o.pass) o.detail = std::to_string(cells) + " cells";
  return o;
}

Outcome c5() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 5);
  int inv = 0, non = 0;
  const auto ts = corpus();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Tableau& t = ts[i];
    const bool involutive = t.cartan_test(0, rng).involutive;
    bool vanish = true;
    for (int q = 1; q <= 3; ++q)
      for (int p = 0; p <= static_cast<int>(t.a_dim()); ++p) vanish = vanish && cohomology_dim(t, q, p) == 0;
    o.require(involutive == vanish, "counterexample at corpus entry " + std::to_string(i));
    (involutive ? inv : non)++;
  }
  o.require(ts.size() >= 20, "corpus too small");
  const std::string info = std::to_string(ts.size()) + " tableaux, " + std::to_string(inv) + " involutive, " +
                           std::to_string(non) + " not";
  o.detail = o.detail.empty() ? info : o.detail + "; " + info;
  return o;
}

Outcome c6() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 6);
  int checked = 0;
  for (const auto& t : corpus()) {
    const auto ct = t.cartan_test(0, rng);
    if (!ct.involutive) continue;
    ++checked;
    const auto next = t.characters(1, rng).s;
    const std::size_t n = t.a_dim();
    std::vector<std::size_t> expected(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = j; l < n; ++l) expected[j] += ct.characters.s[l];
    o.require(next == expected, "s^(1) = " + chars(next) + " expected " + chars(expected));
  }
  o.require(checked > 0, "no involutive tableau in corpus");
  if (o.pass) o.detail = std::to_string(checked) + " involutive tableaux";
  return o;
}

Outcome c7() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 7);
  int checked = 0;
  for (const auto& t : corpus()) {
    if (!t.cartan_test(0, rng).involutive) continue;
    ++checked;
    const NormalForm nf = normal_form(t, rng);
    const auto rep = verify_normal_form(t, nf, rng);
    o.require(rep.all_pass(), "normal form check failed on an involutive fixture");
  }
  if (o.pass) o.detail = std::to_string(checked) + " involutive tableaux";
  return o;
}

Outcome c8() {
  Outcome o;
  const std::vector<std::pair<std::string, System>> systems = {
      {"wavemap su(2)", build_wavemap_system(builtin::su2())}, {"gg0 sl(3)", build_gg0_system(builtin::sl3_cartan())}};
  std::size_t items = 0;
  for (const auto& [name, sys] : systems) {
    const TowerData td = build_s_chain(sys, 2);
    for (const auto& c : td.certificates) o.require(c.pass, name + " " + c.name + ": " + c.detail);
    for (const auto& it : verify_structure_equations(td)) {
      o.require(it.pass, name + " " + it.label + ": " + it.detail);
      ++items;
    }
  }
  if (o.pass) o.detail = std::to_string(items) + " structure equations, S-chain identities exact";
  return o;
}

Outcome c9() {
  Outcome o;
  const auto g = builtin::su2();
  const System sys = build_wavemap_system(g);
  std::mt19937_64 rng(kSeed + 9);
  const Matrix flag = wave_flag();
  const auto cx = prepare_cauchy(sys, rng, &flag);
  const int D = 6;
  bool doubled_clean = true, oracle_equal = true;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Vector> a, b;
    for (int i = 0; i <= D; ++i) {
      a.push_back(random_vector(rng, 3, 4));
      b.push_back(random_vector(rng, 3, 4));
    }
    const auto s = wave_oracle::solve(g, a, b, D);
    const auto sol = solve_formal(cx, wave_data_from_oracle(cx, s), D);
    for (std::size_t k = 0; k < 6; ++k) {
      oracle_equal = oracle_equal && sol.levels[0][k] == wave_oracle::component(s, k);
      o.require(sol.levels[0][k] == wave_oracle::component(s, k),
                "trial " + std::to_string(trial) + " component " + std::to_string(k) + " differs from oracle");
    }
    const auto mc = maurer_cartan_residual(g, sol, 1);
    o.require(mc.clean && mc.checked_through >= D - 1,
              "trial " + std::to_string(trial) + " Maurer-Cartan residual " +
                  (mc.clean ? "clean" : "nonzero at degree " + std::to_string(mc.lowest_degree)));
    doubled_clean = doubled_clean && maurer_cartan_residual(g, sol, 2).clean;
  }
  const std::string info = std::string("residual with 2*theta ") + (doubled_clean ? "clean" : "nonzero") + " through degree 5";
  const std::string oracle = oracle_equal ? "oracle coefficients equal in all 5 trials" : "oracle mismatch";
  o.detail = o.pass ? oracle + ", residual clean; " + info : oracle + "; " + o.detail + "; " + info;
  return o;
}

Outcome c10() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 10);
  const Tableau order_one(4, 3, {mat({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, -1, 1, 0}}),
                                 mat({{0, 0, 0, 0}, {1, 0, -1, 1}, {0, 0, 0, 0}})});
  const std::vector<std::pair<std::string, System>> systems = {
      {"gg0 sl(3)", build_gg0_system(builtin::sl3_cartan())},
      {"wavemap su(2)", build_wavemap_system(builtin::su2())},
      {"wavemap abelian", build_wavemap_system(builtin::abelian(2))},
      {"full 2x1", make_system(full_tableau(2, 1), PolyMap())},
      {"full 3x2", make_system(full_tableau(3, 2), PolyMap())},
      {"order-one 4x3", make_system(order_one, PolyMap())}};
  for (const auto& [name, sys] : systems) {
    const auto cx = prepare_cauchy(sys, rng);
    const Vector p = data_point(cx, random_cauchy_data(cx, rng, 1));
    const PolarReport pr = polar_dims(cx, p, rng);
    o.require(pr.pass, name + " polar dims " + chars(pr.dims) + " expected " + chars(pr.expected));
    for (std::size_t h = 0; h < sys.n(); ++h) {
      const RestrictedPolar rp = restricted_polar_check(cx, p, h, rng);
      o.require(rp.pass() && rp.dim == h + 1,
                name + " restricted h=" + std::to_string(h) + " dim " + std::to_string(rp.dim));
    }
  }
  if (o.pass) o.detail = std::to_string(systems.size()) + " systems";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double budget = kBudget[i + 1];
    if (secs >= budget) {
      o.pass = false;
      o.detail += "; over runtime budget";
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu: %s (%.2f s of %.0f s) %s\n", i + 1, o.pass ? "PASS" : "FAIL", secs, budget,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
