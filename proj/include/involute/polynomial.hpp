#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "involute/matrix.hpp"

namespace involute {

using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

// Sparse multivariate polynomial with exact rational coefficients.  Zero
// coefficients are never stored.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static Polynomial constant(std::size_t num_vars, const Rational& c) {
    Polynomial p(num_vars);
    p.add_term(Monomial(num_vars, 0), c);
    return p;
  }

  static Polynomial variable(std::size_t num_vars, std::size_t var) {
    if (var >= num_vars) throw DimensionMismatch("Polynomial::variable: index out of range");
    Monomial m(num_vars, 0);
    m[var] = 1;
    Polynomial p(num_vars);
    p.add_term(m, Rational(1));
    return p;
  }

  static Polynomial monomial(const Monomial& m, const Rational& c) {
    Polynomial p(m.size());
    p.add_term(m, c);
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.size() != num_vars_) throw DimensionMismatch("Polynomial::add_term: exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const { return *this * Rational(-1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.multiply(b, -1); }

  // Product with all terms of total degree > max_degree dropped (max_degree < 0: no truncation).
  Polynomial multiply(const Polynomial& b, int max_degree) const {
    check_arity(b);
    Polynomial r(num_vars_);
    Monomial m(num_vars_);
    for (const auto& [ma, ca] : terms_) {
      const int da = total_degree(ma);
      for (const auto& [mb, cb] : b.terms_) {
        if (max_degree >= 0 && da + total_degree(mb) > max_degree) continue;
        for (std::size_t i = 0; i < num_vars_; ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }

  Polynomial partial(std::size_t var) const {
    if (var >= num_vars_) throw DimensionMismatch("Polynomial::partial: variable index out of range");
    Polynomial r(num_vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial dm = m;
      dm[var] -= 1;
      r.add_term(dm, c * m[var]);
    }
    return r;
  }

  Rational eval(const Vector& point) const {
    if (point.size() != num_vars_) throw DimensionMismatch("Polynomial::eval: point has wrong arity");
    Rational s = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < num_vars_; ++i)
        for (int k = 0; k < m[i]; ++k) t *= point[i];
      s += t;
    }
    return s;
  }

  Polynomial truncated(int max_degree) const {
    Polynomial r(num_vars_);
    for (const auto& [m, c] : terms_)
      if (total_degree(m) <= max_degree) r.terms_.emplace(m, c);
    return r;
  }

  Polynomial homogeneous_part(int d) const {
    Polynomial r(num_vars_);
    for (const auto& [m, c] : terms_)
      if (total_degree(m) == d) r.terms_.emplace(m, c);
    return r;
  }

  // Substitute var i -> subs[i]; subs share an arity that becomes the result's.
  // Terms of total degree > max_degree in the new variables are dropped when
  // max_degree >= 0.
  Polynomial compose(const std::vector<Polynomial>& subs, int max_degree = -1) const {
    if (subs.size() != num_vars_) throw DimensionMismatch("Polynomial::compose: need one substitution per variable");
    const std::size_t nv = subs.empty() ? 0 : subs.front().num_vars();
    for (const auto& s : subs)
      if (s.num_vars() != nv) throw DimensionMismatch("Polynomial::compose: substitutions disagree on arity");
    std::vector<std::vector<Polynomial>> powers(num_vars_);
    auto power = [&](std::size_t i, int k) -> const Polynomial& {
      auto& ps = powers[i];
      if (ps.empty()) ps.push_back(Polynomial::constant(nv, Rational(1)));
      while (static_cast<int>(ps.size()) <= k) ps.push_back(ps.back().multiply(subs[i], max_degree));
      return ps[static_cast<std::size_t>(k)];
    };
    Polynomial r(nv);
    for (const auto& [m, c] : terms_) {
      Polynomial t = Polynomial::constant(nv, c);
      for (std::size_t i = 0; i < num_vars_ && !t.is_zero(); ++i)
        if (m[i] > 0) t = t.multiply(power(i, m[i]), max_degree);
      r += t;
    }
    return r;
  }

  // Re-index variables: variable i becomes variable var_map[i] of new_num_vars.
  Polynomial remap(std::size_t new_num_vars, const std::vector<std::size_t>& var_map) const {
    if (var_map.size() != num_vars_) throw DimensionMismatch("Polynomial::remap: map length mismatch");
    Polynomial r(new_num_vars);
    for (const auto& [m, c] : terms_) {
      Monomial nm(new_num_vars, 0);
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (var_map[i] >= new_num_vars) throw DimensionMismatch("Polynomial::remap: target index out of range");
        nm[var_map[i]] += m[i];
      }
      r.add_term(nm, c);
    }
    return r;
  }

  // Embed into a larger variable set, keeping indices.
  Polynomial extended(std::size_t new_num_vars) const {
    std::vector<std::size_t> id(num_vars_);
    std::iota(id.begin(), id.end(), std::size_t{0});
    return remap(new_num_vars, id);
  }

  bool operator==(const Polynomial& o) const { return num_vars_ == o.num_vars_ && terms_ == o.terms_; }

  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string coef = involute::to_string(c);
      bool neg = c < 0;
      if (neg) coef = involute::to_string(Rational(-c));
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += i < names.size() ? names[i] : "v" + std::to_string(i + 1);
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (mono.empty())
        out += coef;
      else if (coef == "1")
        out += mono;
      else
        out += coef + "*" + mono;
    }
    return out;
  }

 private:
  void check_arity(const Polynomial& o) const {
    if (o.num_vars_ != num_vars_) throw DimensionMismatch("Polynomial: arity mismatch");
  }

  std::size_t num_vars_ = 0;
  Terms terms_;
};

// A vector of polynomials in a common set of variables.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(std::size_t num_vars, std::size_t components) : num_vars_(num_vars), comps_(components, Polynomial(num_vars)) {}
  explicit PolyMap(std::vector<Polynomial> comps) : comps_(std::move(comps)) {
    num_vars_ = comps_.empty() ? 0 : comps_.front().num_vars();
    for (const auto& p : comps_)
      if (p.num_vars() != num_vars_) throw DimensionMismatch("PolyMap: components disagree on arity");
  }

  static PolyMap constant(std::size_t num_vars, const Vector& v) {
    PolyMap r(num_vars, v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Polynomial::constant(num_vars, v[i]);
    return r;
  }

  std::size_t num_vars() const { return num_vars_; }
  std::size_t size() const { return comps_.size(); }
  Polynomial& operator[](std::size_t i) { return comps_[i]; }
  const Polynomial& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Polynomial>& components() const { return comps_; }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Polynomial& p) { return p.is_zero(); });
  }

  PolyMap& operator+=(const PolyMap& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  PolyMap& operator-=(const PolyMap& o) {
    check(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  friend PolyMap operator+(PolyMap a, const PolyMap& b) { return a += b; }
  friend PolyMap operator-(PolyMap a, const PolyMap& b) { return a -= b; }
  PolyMap scaled(const Rational& c) const {
    PolyMap r = *this;
    for (auto& p : r.comps_) p *= c;
    return r;
  }

  // Component-wise linear map: result_i = sum_j m(i, j) * this_j.
  PolyMap mapped(const Matrix& m) const {
    if (m.cols() != comps_.size()) throw DimensionMismatch("PolyMap::mapped: matrix width differs from component count");
    PolyMap r(num_vars_, m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0 && !comps_[j].is_zero()) r.comps_[i] += comps_[j] * m(i, j);
    return r;
  }

  PolyMap partial(std::size_t var) const {
    PolyMap r(num_vars_, comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = comps_[i].partial(var);
    return r;
  }

  Vector eval(const Vector& point) const {
    Vector v(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) v[i] = comps_[i].eval(point);
    return v;
  }

  PolyMap compose(const std::vector<Polynomial>& subs, int max_degree = -1) const {
    std::vector<Polynomial> out;
    out.reserve(comps_.size());
    for (const auto& p : comps_) out.push_back(p.compose(subs, max_degree));
    if (out.empty()) return PolyMap(subs.empty() ? 0 : subs.front().num_vars(), 0);
    return PolyMap(std::move(out));
  }

  PolyMap truncated(int d) const {
    PolyMap r = *this;
    for (auto& p : r.comps_) p = p.truncated(d);
    return r;
  }

  PolyMap homogeneous_part(int d) const {
    PolyMap r = *this;
    for (auto& p : r.comps_) p = p.homogeneous_part(d);
    return r;
  }

  PolyMap remap(std::size_t new_num_vars, const std::vector<std::size_t>& var_map) const {
    PolyMap r(new_num_vars, comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = comps_[i].remap(new_num_vars, var_map);
    return r;
  }

  PolyMap extended(std::size_t new_num_vars) const {
    PolyMap r(new_num_vars, comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) r.comps_[i] = comps_[i].extended(new_num_vars);
    return r;
  }

  int degree() const {
    int d = -1;
    for (const auto& p : comps_) d = std::max(d, p.degree());
    return d;
  }

  // Every monomial appearing in some component, with its coefficient vector.
  std::map<Monomial, Vector> coefficient_vectors() const {
    std::map<Monomial, Vector> out;
    for (std::size_t i = 0; i < comps_.size(); ++i)
      for (const auto& [m, c] : comps_[i].terms()) {
        auto [it, inserted] = out.try_emplace(m, Vector(comps_.size(), Rational(0)));
        it->second[i] = c;
      }
    return out;
  }

  static PolyMap from_coefficient_vectors(std::size_t num_vars, std::size_t components,
                                          const std::map<Monomial, Vector>& table) {
    PolyMap r(num_vars, components);
    for (const auto& [m, v] : table)
      for (std::size_t i = 0; i < components; ++i) r.comps_[i].add_term(m, v[i]);
    return r;
  }

  bool operator==(const PolyMap& o) const { return num_vars_ == o.num_vars_ && comps_ == o.comps_; }

 private:
  void check(const PolyMap& o) const {
    if (o.num_vars_ != num_vars_ || o.comps_.size() != comps_.size()) throw DimensionMismatch("PolyMap: shape mismatch");
  }

  std::size_t num_vars_ = 0;
  std::vector<Polynomial> comps_;
};

// Monomials of total degree d in n variables, in graded-lexicographic order
// (descending exponent of the first variable first).
inline std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial m(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == n) {
      m[i] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

}  // namespace involute
