#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "involute/errors.hpp"

namespace involute {

// Arbitrary-precision rational, always kept in lowest terms by GMP.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto strip = [](std::string& t) {
    while (!t.empty() && (t.front() == ' ' || t.front() == '+')) t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
  };
  strip(s);
  if (s.empty()) throw ParseError("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("invalid rational literal '" + std::string(text) + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vector& axpy(Vector& y, const Rational& a, const Vector& x) {
  if (y.size() != x.size()) throw DimensionMismatch("axpy: length mismatch");
  if (a == 0) return y;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, Rational(0));
  v.at(i) = 1;
  return v;
}

// Uniform integer in [-bound, bound].
inline Rational random_integer(std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  return Rational(static_cast<long>(dist(rng)));
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  Vector v(n);
  for (auto& x : v) x = random_integer(rng, bound);
  return v;
}

// Small random rational p/q with |p| <= bound, 1 <= q <= den_bound.
inline Rational random_rational(std::mt19937_64& rng, std::int64_t bound, std::int64_t den_bound) {
  std::uniform_int_distribution<std::int64_t> num(-bound, bound);
  std::uniform_int_distribution<std::int64_t> den(1, den_bound);
  Rational r(static_cast<long>(num(rng)), static_cast<unsigned long>(den(rng)));
  r.canonicalize();
  return r;
}

}  // namespace involute
