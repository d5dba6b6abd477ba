// involute: command-line front end.
//   involute tableau FILE     dims, characters, Cartan test, involutive index
//   involute spencer FILE     Spencer table, 2-acyclicity, harmonic split
//   involute system FILE      regularity certificates, S-chain, structure equations
//   involute cauchy SYS DATA  formal power-series solution of the Cauchy problem
//   involute examples NAME    write a built-in system or Lie algebra
// Exit codes: 0 pass, 1 check failed, 2 input error, 3 resource cap.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "involute/involute.hpp"
#include "involute/io.hpp"

using namespace involute;
using io::json;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  bool json_out = false;
  std::size_t samples = 3;
  std::size_t max_ambient = 20000;
  int max_degree = 10;
};

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("ARTIFACT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("ARTIFACT_SEED is not an unsigned integer: '" + std::string(env) + "'");
    }
  }
  return 1;
}

Limits limits_of(const Common& c) { return Limits{c.max_ambient, c.max_degree}; }

SamplingOptions sampling_of(const Common& c) {
  SamplingOptions o;
  o.samples = c.samples;
  return o;
}

// Collects results, certificates and human-readable lines for one command.
class Report {
 public:
  Report(std::string command, std::uint64_t seed) : command_(std::move(command)), seed_(seed) {}

  json results = json::object();
  std::string digest;

  void line(const std::string& s) { lines_.push_back(s); }
  void certificate(const std::string& name, bool pass, const std::string& method, const std::string& detail = "") {
    certs_.push_back(json{{"name", name}, {"pass", pass}, {"method", method}, {"detail", detail}});
    pass_ = pass_ && pass;
    line(std::string(pass ? "PASS " : "FAIL ") + name + " [" + method + "]" + (detail.empty() ? "" : ": " + detail));
  }
  void certificate(const Certificate& c) { certificate(c.name, c.pass, c.method, c.detail); }
  bool pass() const { return pass_; }

  int emit(bool as_json, double ms) const {
    if (as_json) {
      json j{{"command", command_}, {"seed", seed_},         {"input_digest", digest}, {"results", results},
             {"certificates", certs_}, {"pass", pass_}, {"timing_ms", ms}};
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& l : lines_) std::cout << l << "\n";
    }
    return pass_ ? 0 : 1;
  }

 private:
  std::string command_;
  std::uint64_t seed_;
  std::vector<std::string> lines_;
  json certs_ = json::array();
  bool pass_ = true;
};

std::string join(const std::vector<std::size_t>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

json load(const std::string& path, std::string& digest) {
  const std::string text = io::read_file(path);
  digest += io::fnv1a_hex(text);
  return io::parse_text(text, path);
}

json characters_json(const CharacterVector& cv) {
  return json{{"s", cv.s}, {"nu", cv.nu}, {"principal", cv.principal}, {"certified", cv.certified},
              {"samples", cv.samples}, {"bound", cv.bound}};
}

// ---- tableau ----

struct TableauArgs {
  std::string file;
  bool characters = false, involutive_index = false;
  int prolong = 1, max_order = 4;
};

int cmd_tableau(const TableauArgs& a, const Common& c, const std::string& echo) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = resolve_seed(c);
  std::mt19937_64 rng(seed);
  Report rep(echo, seed);
  const Tableau t = io::parse_tableau(load(a.file, rep.digest), limits_of(c));
  if (a.prolong < 0) throw InputError("--prolong must be non-negative");
  std::vector<std::size_t> dims;
  for (int h = 0; h <= a.prolong; ++h) dims.push_back(t.prolongation_dim(h));
  rep.results["a_dim"] = t.a_dim();
  rep.results["b_dim"] = t.b_dim();
  rep.results["dims"] = dims;
  rep.line("dims A^(0.." + std::to_string(a.prolong) + "): " + join(dims));

  const CartanTest ct = t.cartan_test(0, rng, sampling_of(c));
  const auto coord = t.coordinate_flag_sequence(0);
  rep.results["characters"] = characters_json(ct.characters);
  rep.results["coordinate_flag"] = coord;
  rep.results["cartan_test"] = json{{"involutive", ct.involutive}, {"dim_next", ct.dim_next}, {"bound", ct.bound}};
  rep.line("characters s=" + format_characters(ct.characters.s) + " (generic flag, " +
           std::to_string(ct.characters.samples) + " agreeing samples, bound " + std::to_string(ct.characters.bound) + ")");
  if (a.characters) rep.line("  nu=" + std::to_string(ct.characters.nu) + " principal=" + std::to_string(ct.characters.principal));
  rep.line("coordinate flag s=" + format_characters(coord));
  rep.line(std::string("cartan test: ") + (ct.involutive ? "involutive" : "not involutive") + " (dim A^(1)=" +
           std::to_string(ct.dim_next) + ", bound " + std::to_string(ct.bound) + ")");
  if (a.involutive_index) {
    const InvolutiveIndex idx = t.involutive_index(a.max_order, rng, sampling_of(c));
    rep.results["involutive_index"] = json{{"k", idx.k}, {"characters", characters_json(idx.characters)}};
    rep.line("k=" + std::to_string(idx.k) + ", s=" + format_characters(idx.characters.s));
  }
  return rep.emit(c.json_out, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
}

// ---- spencer ----

struct SpencerArgs {
  std::string file;
  int q_max = 3, p_max = -1;
  bool two_acyclic = false, harmonic = false;
};

int cmd_spencer(const SpencerArgs& a, const Common& c, const std::string& echo) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = resolve_seed(c);
  Report rep(echo, seed);
  const Tableau t = io::parse_tableau(load(a.file, rep.digest), limits_of(c));
  if (a.q_max < 0) throw InputError("--q-max must be non-negative");
  const int p_max = a.p_max < 0 ? static_cast<int>(t.a_dim()) : a.p_max;
  json table = json::object();
  for (const auto& [qp, e] : spencer_table(t, a.q_max, p_max)) {
    const std::string key = "(" + std::to_string(qp.first) + "," + std::to_string(qp.second) + ")";
    table[key] = json{{"dim_cell", e.dim_cell}, {"rank_delta", e.rank_delta}, {"H_dim", e.h_dim}};
    rep.line(key + " dim_cell=" + std::to_string(e.dim_cell) + " rank_delta=" + std::to_string(e.rank_delta) +
             " H=" + std::to_string(e.h_dim));
  }
  rep.results["table"] = table;
  if (a.harmonic) {
    json hj = json::object();
    for (int q = 0; q <= a.q_max; ++q)
      for (int p = 0; p <= std::min<int>(p_max, static_cast<int>(t.a_dim())); ++p) {
        const HarmonicSplit s = harmonic_split(t, q, p);
        const std::string key = "(" + std::to_string(q) + "," + std::to_string(p) + ")";
        hj[key] = json{{"exact", s.exact.dim()}, {"harmonic", s.harmonic.dim()}, {"coexact", s.coexact.dim()}};
        rep.line("harmonic " + key + " B=" + std::to_string(s.exact.dim()) + " H=" + std::to_string(s.harmonic.dim()) +
                 " B*=" + std::to_string(s.coexact.dim()));
      }
    rep.results["harmonic"] = hj;
  }
  if (a.two_acyclic) {
    const auto ta = two_acyclicity(t, std::max(1, a.q_max));
    rep.results["two_acyclic"] = ta.acyclic;
    rep.results["h2_dims"] = ta.h_dims;
    rep.certificate("two_acyclic", ta.acyclic, "exact rank",
                    "H^{q,2} for q=1.." + std::to_string(ta.q_to) + ": " + join(ta.h_dims, ","));
  }
  return rep.emit(c.json_out, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
}

// ---- system ----

struct SystemArgs {
  std::string file, construct;
  bool check = false, structure = false;
  int tower = -1;
};

// A system file, or a Lie algebra file turned into a system by `construct`.
System load_system(const std::string& path, const std::string& construct, const Common& c, std::string& digest,
                   std::optional<CartanDecomposition>* cd_out = nullptr) {
  const json j = load(path, digest);
  if (construct.empty()) {
    if (j.contains("brackets")) throw InputError(path + ": Lie algebra input needs --construct gg0|wavemap");
    return io::parse_system(j, limits_of(c));
  }
  const io::LieInput in = io::parse_lie(j);
  if (construct == "wavemap") return build_wavemap_system(in.g);
  if (construct == "gg0") {
    CartanDecomposition cd = cartan_decomposition(in.g, in.g0_basis, in.a_basis);
    System sys = build_gg0_system(cd);
    if (cd_out) *cd_out = cd;
    return sys;
  }
  throw InputError("--construct must be gg0 or wavemap");
}

int cmd_system(const SystemArgs& a, const Common& c, const std::string& echo) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = resolve_seed(c);
  Report rep(echo, seed);
  std::optional<CartanDecomposition> cd;
  const System sys = load_system(a.file, a.construct, c, rep.digest, &cd);
  rep.results["n"] = sys.n();
  rep.results["r"] = sys.r();
  rep.results["dim_A"] = sys.s();
  rep.results["vars"] = sys.vars;
  rep.line("n=" + std::to_string(sys.n()) + " r=" + std::to_string(sys.r()) + " dim A=" + std::to_string(sys.s()));
  if (cd) {
    rep.results["decomposition"] = json{{"g0", cd->g0.cols()}, {"m", cd->m.cols()}, {"a", cd->a.cols()},
                                        {"b", cd->b.cols()},   {"g_a", cd->ga.cols()}, {"p", cd->p.cols()}};
    rep.line("dims g0=" + std::to_string(cd->g0.cols()) + " m=" + std::to_string(cd->m.cols()) +
             " a=" + std::to_string(cd->a.cols()) + " b=" + std::to_string(cd->b.cols()) +
             " p=" + std::to_string(cd->p.cols()) + "; dim m - n = " + std::to_string(cd->m.cols() - cd->n()));
  }
  if (a.check) {
    rep.certificate(check_phi_in_B02(sys, 8, seed));
    for (const auto& cert : check_torsion_condition(sys)) rep.certificate(cert);
    if (cd) rep.certificate("bracket_identity_2phi", gg0_bracket_identity(*cd, sys), "symbolic");
  }
  const int order = a.tower >= 0 ? a.tower : (a.structure ? 1 : -1);
  if (order >= 0) {
    const TowerData td = build_s_chain(sys, order);
    json terms = json::array();
    for (std::size_t m = 0; m < td.s_chain.size(); ++m) {
      std::size_t count = 0;
      for (std::size_t i = 0; i < td.s_chain[m].size(); ++i) count += td.s_chain[m][i].size();
      terms.push_back(count);
    }
    rep.results["tower"] = json{{"order", order}, {"s_chain_terms", terms}};
    rep.line("S-chain S_(1)..S_(" + std::to_string(order + 1) + ") term counts: " + terms.dump());
    for (const auto& cert : td.certificates) rep.certificate(cert);
    if (a.structure)
      for (const auto& item : verify_structure_equations(td))
        rep.certificate(item.label, item.pass, "symbolic mod lower forms", item.detail);
  }
  return rep.emit(c.json_out, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
}

// ---- cauchy ----

struct CauchyArgs {
  std::string system, data, construct, output, template_out;
  int degree = 6, h_max = 4;
  bool verify = false, polar = false;
};

std::string residual_text(const ResidualReport& r) {
  if (r.clean) return "clean through " + std::to_string(r.checked_through);
  return "nonzero at degree " + std::to_string(r.lowest_degree) + " in " + r.component;
}

int cmd_cauchy(const CauchyArgs& a, const Common& c, const std::string& echo) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t seed = resolve_seed(c);
  std::mt19937_64 rng(seed);
  Report rep(echo, seed);
  const System sys = load_system(a.system, a.construct, c, rep.digest);
  if (a.degree > c.max_degree) throw CapExceeded("--degree exceeds --max-degree " + std::to_string(c.max_degree));
  std::optional<json> dj;
  std::optional<Matrix> flag;
  if (!a.data.empty()) {
    dj = load(a.data, rep.digest);
    flag = io::parse_flag(*dj, sys.n());
  }
  const CauchyContext cx = prepare_cauchy(sys, rng, flag ? &*flag : nullptr, a.h_max);
  std::vector<std::size_t> level_dims;
  for (int h = 0; h <= cx.k; ++h) level_dims.push_back(cx.tower.coords.dim(h));
  rep.results["k"] = cx.k;
  rep.results["characters"] = cx.characters.s;
  rep.results["level_dims"] = level_dims;
  rep.results["blocks"] = cx.nf.s;
  rep.line("k=" + std::to_string(cx.k) + ", s=" + format_characters(cx.characters.s) + ", level dims " + join(level_dims));
  if (!a.template_out.empty()) {
    CauchyData zero;
    zero.x0 = Vector(sys.n(), Rational(0));
    for (int h = 0; h < cx.k; ++h) zero.p_const.push_back(Vector(level_dims[static_cast<std::size_t>(h)], Rational(0)));
    for (std::size_t rho = 1; rho <= cx.nf.nu; ++rho) zero.p_blocks.push_back(PolyMap(rho, cx.nf.s[rho - 1]));
    std::ofstream out(a.template_out);
    out << io::cauchy_data_json(zero, &cx.nf.basis_a).dump(2) << "\n";
    rep.line("wrote data template to " + a.template_out);
  }
  if (!dj) {
    if (a.template_out.empty()) rep.line("no data file given; pass DATA or --template FILE");
    return rep.emit(c.json_out, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  const CauchyData data = io::parse_cauchy_data(*dj, cx);
  const FormalSolution sol = solve_formal(cx, data, a.degree);
  rep.results["degree"] = sol.degree;
  rep.results["data_coefficients"] = sol.data_coefficients;
  rep.results["literal_composition"] = sol.literal_composition;
  rep.results["solution"] = io::solution_json(sol);
  rep.line("degree " + std::to_string(sol.degree) + ", " + std::to_string(sol.data_coefficients) + " coefficients from data");
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= sys.n(); ++i) names.push_back("u" + std::to_string(i));
  for (std::size_t a0 = 0; a0 < sol.levels[0].size(); ++a0)
    rep.line("Q_(0)[" + std::to_string(a0 + 1) + "] = " + sol.levels[0][a0].to_string(names));
  if (!sol.literal_composition)
    rep.line("note: blocks vary along later adapted variables; initial conditions are imposed on the slice");
  if (!a.output.empty()) {
    std::ofstream out(a.output);
    out << io::solution_json(sol).dump(2) << "\n";
  }
  if (a.verify) {
    const ResidualReport r = verify_solution(sys, sol);
    rep.results["residual"] = json{{"clean", r.clean}, {"checked_through", r.checked_through},
                                   {"lowest_degree", r.lowest_degree}, {"component", r.component}};
    rep.line("residual " + residual_text(r));
    rep.certificate("residual", r.clean, "exact expansion", residual_text(r));
    const ResidualReport jr = verify_jets(cx, sol);
    rep.certificate("jet_compatibility", jr.clean, "exact expansion", residual_text(jr));
    rep.certificate("initial_conditions", check_initial_conditions(cx, data, sol), "exact slice restriction");
  }
  if (a.polar) {
    const Vector p = data_point(cx, data);
    const PolarReport pr = polar_dims(cx, p, rng);
    rep.results["polar_dims"] = pr.dims;
    rep.results["polar_expected"] = pr.expected;
    rep.certificate("polar_dims", pr.pass, "exact rank along a sampled generic flag",
                    "dims " + join(pr.dims) + " expected " + join(pr.expected));
    json rj = json::array();
    for (std::size_t h = 0; h < sys.n(); ++h) {
      const RestrictedPolar rp = restricted_polar_check(cx, p, h, rng);
      rj.push_back(json{{"h", h}, {"dim", rp.dim}, {"expected", rp.expected}, {"contained", rp.contained}});
      rep.certificate("restricted_polar_h" + std::to_string(h), rp.pass(), "exact rank",
                      "dim " + std::to_string(rp.dim) + " expected " + std::to_string(rp.expected));
    }
    rep.results["restricted_polar"] = rj;
  }
  return rep.emit(c.json_out, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
}

// ---- examples ----

const std::vector<std::string> kExamples = {"gg0:sl3", "gg0:sl2", "wavemap:su2", "wavemap:abelian[:d]",
                                            "lie:sl3", "lie:sl2", "lie:su2"};

json example_json(const std::string& name) {
  if (name == "gg0:sl3") return io::system_json(build_gg0_system(builtin::sl3_cartan()));
  if (name == "gg0:sl2") return io::system_json(build_gg0_system(builtin::sl2_cartan()));
  if (name == "wavemap:su2") return io::system_json(build_wavemap_system(builtin::su2()));
  if (name.rfind("wavemap:abelian", 0) == 0) {
    std::size_t d = 2;
    if (name.size() > 15) {
      if (name[15] != ':') throw InputError("unknown example '" + name + "'");
      try {
        d = std::stoul(name.substr(16));
      } catch (const std::exception&) {
        throw InputError("wavemap:abelian:d needs a positive integer d");
      }
      if (d == 0) throw InputError("wavemap:abelian:d needs a positive integer d");
    }
    return io::system_json(build_wavemap_system(builtin::abelian(d)));
  }
  auto columns = [](const Matrix& m) { return CartanDecomposition::columns(m); };
  if (name == "lie:sl3") {
    const auto cd = builtin::sl3_cartan();
    return io::lie_json(cd.g, columns(cd.g0), columns(cd.a));
  }
  if (name == "lie:sl2") {
    const auto cd = builtin::sl2_cartan();
    return io::lie_json(cd.g, columns(cd.g0), columns(cd.a));
  }
  if (name == "lie:su2") return io::lie_json(builtin::su2());
  throw InputError("unknown example '" + name + "'");
}

int cmd_examples(const std::string& name, const std::string& output, const Common& c, const std::string& echo) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep(echo, resolve_seed(c));
  if (name == "list") {
    for (const auto& e : kExamples) rep.line(e);
    rep.results["names"] = kExamples;
    return rep.emit(c.json_out, 0);
  }
  const std::string text = example_json(name).dump(2) + "\n";
  rep.digest = io::fnv1a_hex(text);
  rep.results["name"] = name;
  if (output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(output);
  if (!out) throw InputError("cannot write '" + output + "'");
  out << text;
  rep.results["output"] = output;
  rep.line("wrote " + name + " to " + output);
  return rep.emit(c.json_out, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "random seed (default: $ARTIFACT_SEED, then 1)");
  sub->add_flag("--json", c.json_out, "emit a JSON report");
  sub->add_option("--samples", c.samples, "flag samples per character estimate")->check(CLI::PositiveNumber);
  sub->add_option("--max-ambient", c.max_ambient, "cap on tensor dimensions");
  sub->add_option("--max-degree", c.max_degree, "cap on degrees");
}

int report_error(const std::string& kind, const std::string& what, int code, const Common& c) {
  if (c.json_out)
    std::cout << json{{"error", kind}, {"message", what}, {"exit_code", code}}.dump(2) << "\n";
  std::cerr << "involute: " << kind << ": " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Involutivity, Spencer cohomology and formal Cauchy problems for first-order PDE systems"};
  app.require_subcommand(1);
  Common common;
  std::string echo;
  for (int i = 0; i < argc; ++i) echo += (i ? " " : "") + std::string(argv[i]);

  TableauArgs ta;
  auto* tab = app.add_subcommand("tableau", "dims, characters, Cartan test, involutive index");
  tab->add_option("file", ta.file, "tableau JSON")->required();
  tab->add_flag("--characters", ta.characters, "print Cartan integer and principal character");
  tab->add_option("--prolong", ta.prolong, "report dims of A^(0..H)");
  tab->add_flag("--involutive-index", ta.involutive_index, "find the least involutive prolongation");
  tab->add_option("--max-order", ta.max_order, "highest prolongation tried for the involutive index");
  add_common(tab, common);

  SpencerArgs sa;
  auto* sp = app.add_subcommand("spencer", "Spencer table");
  sp->add_option("file", sa.file, "tableau JSON")->required();
  sp->add_option("--q-max", sa.q_max, "largest q");
  sp->add_option("--p-max", sa.p_max, "largest p (default n)");
  sp->add_flag("--two-acyclic", sa.two_acyclic, "check H^{q,2} = 0 for q = 1..q-max");
  sp->add_flag("--harmonic", sa.harmonic, "report the B + H + B* split of each cell");
  add_common(sp, common);

  SystemArgs ya;
  auto* sy = app.add_subcommand("system", "regularity certificates, S-chain, structure equations");
  sy->add_option("file", ya.file, "system JSON, or Lie JSON with --construct")->required();
  sy->add_option("--construct", ya.construct, "build from a Lie algebra file: gg0 or wavemap");
  sy->add_flag("--check", ya.check, "Φ in B^{0,2} and torsion certificates");
  sy->add_option("--tower", ya.tower, "build the S-chain up to order H");
  sy->add_flag("--structure", ya.structure, "verify the structure equations of the tower");
  add_common(sy, common);

  CauchyArgs ca;
  auto* cy = app.add_subcommand("cauchy", "formal power-series solution of the Cauchy problem");
  cy->add_option("system", ca.system, "system JSON")->required();
  cy->add_option("data", ca.data, "Cauchy data JSON");
  cy->add_option("--construct", ca.construct, "build the system from a Lie algebra file: gg0 or wavemap");
  cy->add_option("--degree", ca.degree, "truncation degree D")->check(CLI::PositiveNumber);
  cy->add_option("--max-prolong", ca.h_max, "highest prolongation tried for the involutive index");
  cy->add_flag("--verify", ca.verify, "residual, jet and initial-condition checks");
  cy->add_flag("--polar", ca.polar, "polar-space dimension checks at the data point");
  cy->add_option("--output", ca.output, "write the solution JSON here");
  cy->add_option("--template", ca.template_out, "write zero Cauchy data of the right shape here");
  add_common(cy, common);

  std::string ex_name, ex_out;
  auto* ex = app.add_subcommand("examples", "write a built-in example (NAME or 'list')");
  ex->add_option("name", ex_name, "example name")->required();
  ex->add_option("--output,-o", ex_out, "output file (default stdout)");
  add_common(ex, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*tab) return cmd_tableau(ta, common, echo);
    if (*sp) return cmd_spencer(sa, common, echo);
    if (*sy) return cmd_system(ya, common, echo);
    if (*cy) return cmd_cauchy(ca, common, echo);
    if (*ex) return cmd_examples(ex_name, ex_out, common, echo);
  } catch (const InputError& e) {
    return report_error("input error", e.what(), 2, common);
  } catch (const CapExceeded& e) {
    return report_error("resource cap", e.what(), 3, common);
  } catch (const UnstableGenericity& e) {
    return report_error("unstable genericity", std::string(e.what()) + " (retry with another --seed or more --samples)", 1,
                        common);
  } catch (const CheckFailed& e) {
    return report_error("check failed", e.what(), 1, common);
  } catch (const Error& e) {
    return report_error("error", e.what(), 1, common);
  } catch (const std::exception& e) {
    return report_error("error", e.what(), 1, common);
  }
  return 2;
}
