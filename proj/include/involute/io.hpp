#pragma once

// JSON formats.  Indices in files are 1-based; rationals are strings such as
// "-3/4" or JSON integers.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "involute/cauchy.hpp"
#include "involute/lie.hpp"
#include "involute/systems.hpp"

namespace involute::io {

using json = nlohmann::ordered_json;

inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Parses text, reporting line and column on syntax errors.
inline json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(where + ": line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
  }
}

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + ": missing field \"" + key + "\"");
  return *it;
}

inline std::size_t to_size(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(path + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline Rational to_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }
  throw ParseError(path + ": expected a rational (string or integer)");
}

inline const json& array(const json& j, const std::string& path, std::size_t expected = SIZE_MAX) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  if (expected != SIZE_MAX && j.size() != expected)
    throw DimensionMismatch(path + ": expected " + std::to_string(expected) + " entries, found " + std::to_string(j.size()));
  return j;
}

inline std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

}  // namespace detail

inline json rational_json(const Rational& r) { return to_string(r); }

inline json vector_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_json(x));
  return a;
}

inline Vector parse_vector(const json& j, const std::string& path, std::size_t expected = SIZE_MAX) {
  detail::array(j, path, expected);
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(detail::to_rational(j[i], detail::at(path, i)));
  return v;
}

inline json matrix_json(const Matrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row_vector(i)));
  return a;
}

inline Matrix parse_matrix(const json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  detail::array(j, path, rows);
  std::vector<Vector> rs;
  for (std::size_t i = 0; i < rows; ++i) rs.push_back(parse_vector(j[i], detail::at(path, i), cols));
  return Matrix::from_rows(rs, cols);
}

// Polynomial as [[coeff, [e_1, ..., e_n]], ...].
inline json polynomial_json(const Polynomial& p) {
  json a = json::array();
  for (const auto& [m, c] : p.terms()) a.push_back(json::array({rational_json(c), m}));
  return a;
}

inline Polynomial parse_polynomial(const json& j, std::size_t num_vars, const std::string& path) {
  detail::array(j, path);
  Polynomial p(num_vars);
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string tp = detail::at(path, t);
    detail::array(j[t], tp, 2);
    const Rational c = detail::to_rational(j[t][0], tp + "[0]");
    detail::array(j[t][1], tp + "[1]", num_vars);
    Monomial m;
    for (std::size_t v = 0; v < num_vars; ++v) {
      const std::string ep = detail::at(tp + "[1]", v);
      m.push_back(static_cast<int>(detail::to_size(j[t][1][v], ep)));
    }
    p.add_term(m, c);
  }
  return p;
}

inline json polymap_json(const PolyMap& f) {
  json a = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) a.push_back(polynomial_json(f[i]));
  return a;
}

// ---- tableaux ----

inline json tableau_json(const Tableau& t) {
  json gens = json::array();
  for (const auto& g : t.generators()) gens.push_back(matrix_json(g));
  return json{{"a_dim", t.a_dim()}, {"b_dim", t.b_dim()}, {"generators", gens}};
}

inline Tableau parse_tableau(const json& j, Limits limits = {}) {
  const std::size_t n = detail::to_size(detail::field(j, "a_dim", "tableau"), "a_dim");
  const std::size_t r = detail::to_size(detail::field(j, "b_dim", "tableau"), "b_dim");
  const json& g = detail::array(detail::field(j, "generators", "tableau"), "generators");
  std::vector<Matrix> gens;
  for (std::size_t k = 0; k < g.size(); ++k) gens.push_back(parse_matrix(g[k], detail::at("generators", k), r, n));
  if (r * n > limits.max_ambient_dim) throw CapExceeded("tableau: b_dim * a_dim exceeds the ambient cap");
  return Tableau(n, r, std::move(gens), limits);
}

// ---- systems ----

inline json system_json(const System& sys) {
  json j = tableau_json(sys.tableau);
  json phi = json::object();
  const std::size_t n = sys.n();
  for (std::size_t a = 0; a < sys.r(); ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        const Polynomial& p = sys.phi[sys.phi_index(a, i, k)];
        if (p.is_zero()) continue;
        phi["(" + std::to_string(a + 1) + "," + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")"] =
            polynomial_json(p);
      }
  j["phi"] = phi;
  j["vars"] = sys.vars;
  return j;
}

inline System parse_system(const json& j, Limits limits = {}) {
  Tableau t = parse_tableau(j, limits);
  const std::size_t n = t.a_dim(), r = t.b_dim(), nv = n + t.dim();
  const std::size_t pairs = n >= 2 ? n * (n - 1) / 2 : 0;
  PolyMap phi(nv, r * pairs);
  const ExtBasis e2(n, 2);
  if (j.contains("phi")) {
    const json& pj = j["phi"];
    if (!pj.is_object()) throw ParseError("phi: expected an object keyed by \"(a,i,j)\"");
    for (const auto& [key, val] : pj.items()) {
      std::size_t a = 0, i = 0, k = 0;
      char c1 = 0, c2 = 0, c3 = 0, c4 = 0;
      std::istringstream is(key);
      if (!(is >> c1 >> a >> c2 >> i >> c3 >> k >> c4) || c1 != '(' || c2 != ',' || c3 != ',' || c4 != ')')
        throw ParseError("phi: key \"" + key + "\" is not of the form (a,i,j)");
      if (a < 1 || a > r || i < 1 || k > n || i >= k)
        throw DimensionMismatch("phi: key \"" + key + "\" needs 1 <= a <= " + std::to_string(r) + " and 1 <= i < j <= " +
                                std::to_string(n));
      phi[(a - 1) * pairs + e2.index_of({static_cast<int>(i - 1), static_cast<int>(k - 1)})] =
          parse_polynomial(val, nv, "phi[" + key + "]");
    }
  }
  std::vector<std::string> vars;
  if (j.contains("vars")) {
    const json& vj = detail::array(j["vars"], "vars", nv);
    for (std::size_t v = 0; v < nv; ++v) {
      if (!vj[v].is_string()) throw ParseError(detail::at("vars", v) + ": expected a string");
      vars.push_back(vj[v].get<std::string>());
    }
  }
  return make_system(std::move(t), std::move(phi), std::move(vars));
}

// ---- Lie algebras ----

struct LieInput {
  LieAlgebra g;
  std::vector<Vector> g0_basis, a_basis;
};

inline LieInput parse_lie(const json& j) {
  const std::size_t d = detail::to_size(detail::field(j, "dim", "lie"), "dim");
  LieInput in{LieAlgebra(d), {}, {}};
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> given;
  const json& br = detail::array(detail::field(j, "brackets", "lie"), "brackets");
  for (std::size_t t = 0; t < br.size(); ++t) {
    const std::string p = detail::at("brackets", t);
    detail::array(br[t], p, 4);
    const std::size_t i = detail::to_size(br[t][0], p + "[0]"), k = detail::to_size(br[t][1], p + "[1]"),
                      l = detail::to_size(br[t][2], p + "[2]");
    if (i < 1 || k < 1 || l < 1 || i > d || k > d || l > d) throw DimensionMismatch(p + ": index outside 1.." + std::to_string(d));
    given[{i - 1, k - 1, l - 1}] = detail::to_rational(br[t][3], p + "[3]");
  }
  for (const auto& [key, c] : given) {
    const auto [i, k, l] = key;
    const auto mirror = given.find({k, i, l});
    if (mirror != given.end() && mirror->second != -c)
      throw ParseError("brackets: entries for [e" + std::to_string(i + 1) + ",e" + std::to_string(k + 1) +
                       "] and its reverse are not antisymmetric");
    if (i == k && c != 0) throw ParseError("brackets: [e" + std::to_string(i + 1) + ",e" + std::to_string(i + 1) + "] must vanish");
    in.g.c(i, k, l) = c;
    in.g.c(k, i, l) = -c;
  }
  auto basis = [&](const char* key) {
    std::vector<Vector> out;
    if (!j.contains(key)) return out;
    const json& b = detail::array(j[key], key);
    for (std::size_t t = 0; t < b.size(); ++t) out.push_back(parse_vector(b[t], detail::at(key, t), d));
    return out;
  };
  in.g0_basis = basis("g0_basis");
  in.a_basis = basis("a_basis");
  return in;
}

inline json lie_json(const LieAlgebra& g, const std::vector<Vector>& g0 = {}, const std::vector<Vector>& a = {}) {
  json br = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = i + 1; k < g.dim(); ++k)
      for (std::size_t l = 0; l < g.dim(); ++l)
        if (g.c(i, k, l) != 0) br.push_back(json::array({i + 1, k + 1, l + 1, rational_json(g.c(i, k, l))}));
  json j{{"dim", g.dim()}, {"brackets", br}};
  if (!g0.empty()) {
    j["g0_basis"] = json::array();
    for (const auto& v : g0) j["g0_basis"].push_back(vector_json(v));
  }
  if (!a.empty()) {
    j["a_basis"] = json::array();
    for (const auto& v : a) j["a_basis"].push_back(vector_json(v));
  }
  return j;
}

// ---- Cauchy data and solutions ----

// Optional "flag": the vectors A_1..A_n of the adapted basis of a.
inline std::optional<Matrix> parse_flag(const json& j, std::size_t n) {
  if (!j.contains("flag")) return std::nullopt;
  const json& f = detail::array(j["flag"], "flag", n);
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(parse_vector(f[i], detail::at("flag", i), n));
  return Matrix::from_columns(cols, n);
}

inline CauchyData parse_cauchy_data(const json& j, const CauchyContext& cx) {
  CauchyData data;
  const std::size_t n = cx.n();
  data.x0 = parse_vector(detail::field(j, "x0", "cauchy data"), "x0", n);
  if (j.contains("P_const")) {
    const json& pc = detail::array(j["P_const"], "P_const", static_cast<std::size_t>(cx.k));
    for (int h = 0; h < cx.k; ++h)
      data.p_const.push_back(parse_vector(pc[static_cast<std::size_t>(h)], detail::at("P_const", static_cast<std::size_t>(h)),
                                          cx.tower.coords.dim(h)));
  } else if (cx.k > 0) {
    throw ParseError("cauchy data: missing field \"P_const\" (involutive order is " + std::to_string(cx.k) + ")");
  }
  const json& pb = j.contains("P_blocks") ? j["P_blocks"] : json::object();
  if (!pb.is_object()) throw ParseError("P_blocks: expected an object keyed by block number");
  for (const auto& [key, val] : pb.items()) {
    std::size_t rho = 0;
    try {
      rho = std::stoul(key);
    } catch (const std::exception&) {
      throw ParseError("P_blocks: key \"" + key + "\" is not a block number");
    }
    if (rho < 1 || rho > cx.nf.nu)
      throw DimensionMismatch("P_blocks: block " + key + " outside 1.." + std::to_string(cx.nf.nu));
  }
  for (std::size_t rho = 1; rho <= cx.nf.nu; ++rho) {
    const std::string key = std::to_string(rho);
    if (!pb.contains(key)) throw ParseError("P_blocks: missing block \"" + key + "\"");
    const std::string path = "P_blocks[" + key + "]";
    const json& comps = detail::array(pb[key], path, cx.nf.s[rho - 1]);
    std::vector<Polynomial> ps;
    for (std::size_t a = 0; a < comps.size(); ++a) ps.push_back(parse_polynomial(comps[a], rho, detail::at(path, a)));
    PolyMap blk(rho, 0);
    if (!ps.empty()) blk = PolyMap(std::move(ps));
    data.p_blocks.push_back(std::move(blk));
  }
  return data;
}

inline json cauchy_data_json(const CauchyData& data, const Matrix* flag = nullptr) {
  json j{{"x0", vector_json(data.x0)}};
  j["P_const"] = json::array();
  for (const auto& p : data.p_const) j["P_const"].push_back(vector_json(p));
  j["P_blocks"] = json::object();
  for (std::size_t rho = 1; rho <= data.p_blocks.size(); ++rho)
    j["P_blocks"][std::to_string(rho)] = polymap_json(data.p_blocks[rho - 1]);
  if (flag) {
    j["flag"] = json::array();
    for (std::size_t i = 0; i < flag->cols(); ++i) j["flag"].push_back(vector_json(flag->column(i)));
  }
  return j;
}

inline json solution_json(const FormalSolution& sol) {
  json levels = json::array();
  for (const auto& l : sol.levels) levels.push_back(polymap_json(l));
  return json{{"degree", sol.degree}, {"k", sol.k}, {"x0", vector_json(sol.x0)}, {"levels", levels},
              {"variables", "u = x - x0"}};
}

}  // namespace involute::io
