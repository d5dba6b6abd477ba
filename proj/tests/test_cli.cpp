#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "involute/io.hpp"
#include "json.hpp"
#include "wave_oracle.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + INVOLUTE_BIN + std::string(" ") + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json run_json(const std::string& args, int expected_code = 0) {
  const Outcome r = run(args + " --json");
  EXPECT_EQ(r.code, expected_code) << args;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, ExamplesMatchShippedFixtures) {
  const auto tmp = std::filesystem::temp_directory_path() / "involute_cli_example.json";
  for (const auto& [name, file] : {std::pair{"gg0:sl3", "gg0_sl3.json"}, {"wavemap:su2", "wavemap_su2.json"},
                                   {"lie:sl3", "lie_sl3.json"}}) {
    ASSERT_EQ(run(std::string("examples ") + name + " -o " + tmp.string()).code, 0);
    EXPECT_EQ(slurp(tmp.string()), slurp(fixture(file))) << name;
  }
  std::filesystem::remove(tmp);
}

TEST(Cli, TableauHumanAndJsonAgree) {
  const Outcome human = run("tableau " + fixture("wavemap_su2.json") + " --involutive-index --prolong 2");
  ASSERT_EQ(human.code, 0);
  EXPECT_NE(human.out.find("dims A^(0..2): 6 6 6"), std::string::npos);
  EXPECT_NE(human.out.find("k=0, s=(6,0)"), std::string::npos);
  EXPECT_NE(human.out.find("coordinate flag s=(3,3)"), std::string::npos);
  const json j = run_json("tableau " + fixture("wavemap_su2.json") + " --involutive-index --prolong 2");
  EXPECT_EQ(j["results"]["dims"], json({6, 6, 6}));
  EXPECT_EQ(j["results"]["involutive_index"]["k"], 0);
  EXPECT_EQ(j["results"]["involutive_index"]["characters"]["s"], json({6, 0}));
  EXPECT_EQ(j["results"]["coordinate_flag"], json({3, 3}));
  EXPECT_EQ(j["seed"], 1);
  EXPECT_EQ(j["input_digest"].get<std::string>().size(), 16u);
}

TEST(Cli, SeedResolution) {
  EXPECT_EQ(run_json("tableau " + fixture("gg0_sl3.json") + " --seed 7")["seed"], 7);
  const Outcome r = run("tableau " + fixture("gg0_sl3.json") + " --json", "ARTIFACT_SEED=11");
  EXPECT_EQ(json::parse(r.out)["seed"], 11);
  EXPECT_EQ(run("tableau " + fixture("gg0_sl3.json"), "ARTIFACT_SEED=abc").code, 2);
}

TEST(Cli, DeterministicForFixedSeed) {
  const std::string args = "cauchy " + fixture("gg0_sl3.json") + " " + fixture("cauchy_sl3.json") + " --degree 3 --polar --seed 5";
  EXPECT_EQ(run_json(args)["results"], run_json(args)["results"]);
}

TEST(Cli, SpencerTwoAcyclicity) {
  const json j = run_json("spencer " + fixture("gg0_sl3.json") + " --two-acyclic --q-max 2");
  EXPECT_EQ(j["results"]["two_acyclic"], true);
  EXPECT_EQ(j["results"]["table"]["(0,1)"]["H_dim"], 3);
  EXPECT_EQ(run("spencer " + fixture("identity_tableau.json") + " --two-acyclic").code, 1);
  EXPECT_EQ(run("spencer " + fixture("zero_tableau.json") + " --two-acyclic").code, 0);
  const Outcome zero = run("tableau " + fixture("zero_tableau.json") + " --involutive-index");
  EXPECT_NE(zero.out.find("k=0, s=(0,0)"), std::string::npos);
}

TEST(Cli, SystemCertificates) {
  const json j = run_json("system " + fixture("gg0_sl3.json") + " --check --structure");
  EXPECT_EQ(j["pass"], true);
  EXPECT_GE(j["certificates"].size(), 5u);
  EXPECT_EQ(run("system " + fixture("torsion_failure.json") + " --check").code, 1);
  const json c = run_json("system " + fixture("lie_sl3.json") + " --construct gg0 --check");
  EXPECT_EQ(c["results"]["n"], 2);
  EXPECT_EQ(c["results"]["decomposition"]["p"], 3);
  EXPECT_EQ(run("system " + fixture("lie_sl3.json")).code, 2);
}

TEST(Cli, CauchyVerifyAndPolar) {
  const std::string args =
      "cauchy " + fixture("wavemap_su2.json") + " " + fixture("cauchy_wavemap_su2.json") + " --verify --polar";
  const Outcome human = run(args);
  ASSERT_EQ(human.code, 0);
  EXPECT_NE(human.out.find("residual clean through 5"), std::string::npos);
  const json j = run_json(args);
  EXPECT_EQ(j["results"]["residual"]["checked_through"], 5);
  EXPECT_EQ(j["results"]["polar_dims"], json({8, 2, 2}));
  EXPECT_EQ(j["results"]["polar_dims"], j["results"]["polar_expected"]);
}

TEST(Cli, CauchyWithoutDataDescribesShape) {
  const auto tmp = std::filesystem::temp_directory_path() / "involute_cli_template.json";
  const Outcome r = run("cauchy " + fixture("gg0_sl3.json") + " --template " + tmp.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k=0, s=(3,0)"), std::string::npos);
  EXPECT_EQ(run("cauchy " + fixture("gg0_sl3.json") + " " + tmp.string() + " --degree 3 --verify").code, 0);
  std::filesystem::remove(tmp);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("tableau /nonexistent.json").code, 2);
  EXPECT_EQ(run("tableau " + fixture("malformed.json")).code, 2);
  EXPECT_EQ(run("cauchy " + fixture("gg0_sl3.json") + " " + fixture("cauchy_bad_shape.json")).code, 2);
  EXPECT_EQ(run("cauchy " + fixture("gg0_sl3.json") + " " + fixture("cauchy_sl3.json") + " --degree 30").code, 3);
  EXPECT_EQ(run("tableau " + fixture("gg0_sl3.json") + " --max-ambient 4").code, 3);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("tableau").code, 2);
  EXPECT_EQ(run("examples nosuch").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, ErrorReportIsJson) {
  const Outcome r = run("tableau " + fixture("malformed.json") + " --json");
  const json j = json::parse(r.out);
  EXPECT_EQ(j["exit_code"], 2);
  EXPECT_NE(j["message"].get<std::string>().find("line 5"), std::string::npos);
}

// The shipped wave-map data is the diagonal trace of the oracle series with
// the Goursat data below; the CLI solution must reproduce the oracle.
TEST(Cli, WaveMapFixtureMatchesOracle) {
  using namespace involute;
  std::vector<Vector> a, b;
  for (long i = 0; i <= 6; ++i) {
    a.push_back(Vector{Rational(i % 3), Rational(1 - i % 2), Rational(i - 2)});
    b.push_back(Vector{Rational(1), Rational(i % 2 ? -1 : 2), Rational(i / 2)});
  }
  const auto s = wave_oracle::solve(builtin::su2(), a, b, 6);
  const auto tmp = std::filesystem::temp_directory_path() / "involute_cli_solution.json";
  ASSERT_EQ(run("cauchy " + fixture("wavemap_su2.json") + " " + fixture("cauchy_wavemap_su2.json") +
                " --degree 6 --output " + tmp.string()).code, 0);
  const json sol = json::parse(slurp(tmp.string()));
  std::filesystem::remove(tmp);
  const json& q0 = sol["levels"][0];
  ASSERT_EQ(q0.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k)
    EXPECT_EQ(io::parse_polynomial(q0[k], 2, "q0"), wave_oracle::component(s, k)) << "component " << k;
}
