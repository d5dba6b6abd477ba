#pragma once

#include <map>
#include <string>
#include <vector>

#include "involute/polynomial.hpp"

namespace involute {

// Exterior form with polynomial coefficients over abstract 1-form symbols.
// A term is keyed by its strictly increasing symbol list.
class Form {
 public:
  using Key = std::vector<int>;

  Form() = default;
  explicit Form(std::size_t num_vars) : num_vars_(num_vars) {}

  static Form function(const Polynomial& f) {
    Form r(f.num_vars());
    if (!f.is_zero()) r.terms_[{}] = f;
    return r;
  }
  static Form one(const Polynomial& f, int symbol) {
    Form r(f.num_vars());
    if (!f.is_zero()) r.terms_[{symbol}] = f;
    return r;
  }

  std::size_t num_vars() const { return num_vars_; }
  const std::map<Key, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Form& add(const Key& k, const Polynomial& f) {
    if (f.is_zero()) return *this;
    auto [it, inserted] = terms_.try_emplace(k, f);
    if (!inserted) {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
  }
  Form& operator+=(const Form& o) {
    for (const auto& [k, f] : o.terms_) add(k, f);
    return *this;
  }
  Form& operator-=(const Form& o) {
    for (const auto& [k, f] : o.terms_) add(k, f * Rational(-1));
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }

  Form times(const Polynomial& f) const {
    Form r(num_vars_);
    for (const auto& [k, g] : terms_) r.add(k, g.multiply(f, -1));
    return r;
  }

  friend Form wedge(const Form& a, const Form& b) {
    Form r(a.num_vars_);
    for (const auto& [ka, fa] : a.terms_)
      for (const auto& [kb, fb] : b.terms_) {
        int sign = 1;
        Key k;
        if (!merge(ka, kb, k, sign)) continue;
        Polynomial p = fa.multiply(fb, -1);
        if (sign < 0) p *= Rational(-1);
        r.add(k, p);
      }
    return r;
  }

  // Exterior derivative when symbol v is the differential of polynomial
  // variable v (symbols >= num_vars are treated as closed).
  Form d() const {
    Form r(num_vars_);
    for (const auto& [k, f] : terms_)
      for (const auto& [m, c] : f.terms()) {
        for (std::size_t v = 0; v < num_vars_; ++v) {
          if (m[v] == 0) continue;
          Monomial dm = m;
          --dm[v];
          Key nk;
          int sign = 1;
          if (!merge({static_cast<int>(v)}, k, nk, sign)) continue;
          Polynomial p(num_vars_);
          p.add_term(dm, c * m[v] * sign);
          r.add(nk, p);
        }
      }
    return r;
  }

  // Replaces each symbol s with subs(s) (a 1-form), extended multiplicatively.
  template <class Subs>
  Form substitute(Subs&& subs) const {
    Form r(num_vars_);
    for (const auto& [k, f] : terms_) {
      Form acc = function(f);
      for (int s : k) acc = wedge(acc, subs(s));
      r += acc;
    }
    return r;
  }

  // Part of the form with no symbol satisfying `pred`.
  template <class Pred>
  Form without(Pred&& pred) const {
    Form r(num_vars_);
    for (const auto& [k, f] : terms_) {
      bool hit = false;
      for (int s : k) hit = hit || pred(s);
      if (!hit) r.terms_.emplace(k, f);
    }
    return r;
  }

 private:
  static bool merge(const Key& a, const Key& b, Key& out, int& sign) {
    out.clear();
    std::size_t i = 0, j = 0;
    int swaps = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] < b[j])) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j] < a[i]) {
        swaps += static_cast<int>(a.size() - i);
        out.push_back(b[j++]);
      } else {
        return false;
      }
    }
    sign = swaps % 2 ? -sign : sign;
    return true;
  }

  std::size_t num_vars_ = 0;
  std::map<Key, Polynomial> terms_;
};

}  // namespace involute
