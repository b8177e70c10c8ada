#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace skelpot {

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator (gmpxx canonicalizes the result of every arithmetic operation).
using Rat = mpq_class;
using Int = mpz_class;

/// Dense vector of rationals. Points of N_R and characters of M share it.
using RatVec = std::vector<Rat>;

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline bool all_digits(std::string_view s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (c < '0' || c > '9')
      return false;
  return true;
}
} // namespace detail

/// Parses "p", "-p" or "p/q". A zero denominator is rejected.
inline Rat parse_rat(std::string_view text) {
  std::string_view s = text;
  std::string_view num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  std::string_view num_digits = num;
  if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
    num_digits.remove_prefix(1);
  if (!detail::all_digits(num_digits) || !detail::all_digits(den))
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  Int d(std::string(den), 10);
  if (d == 0)
    throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  Int n(std::string(num_digits), 10);
  if (num.front() == '-')
    n = -n;
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat &r) { return r.get_str(); }

inline Int floor_int(const Rat &r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Int ceil_int(const Rat &r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rat rat_abs(const Rat &r) { return r < 0 ? Rat(-r) : r; }

inline int sign(const Rat &r) { return sgn(r); }

// ---------------------------------------------------------------------------
// RatVec helpers

inline void require_same_dim(const RatVec &a, const RatVec &b) {
  if (a.size() != b.size())
    throw DimensionMismatch("vector dimensions differ: " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
}

inline Rat dot(const RatVec &a, const RatVec &b) {
  require_same_dim(a, b);
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

inline RatVec operator+(const RatVec &a, const RatVec &b) {
  require_same_dim(a, b);
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + b[i];
  return r;
}

inline RatVec operator-(const RatVec &a, const RatVec &b) {
  require_same_dim(a, b);
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] - b[i];
  return r;
}

inline RatVec operator*(const Rat &s, const RatVec &a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = s * a[i];
  return r;
}

inline bool is_zero(const RatVec &a) {
  for (const auto &x : a)
    if (x != 0)
      return false;
  return true;
}

inline bool is_integral(const Rat &r) { return r.get_den() == 1; }

inline RatVec ints(std::initializer_list<long> xs) {
  RatVec v;
  v.reserve(xs.size());
  for (long x : xs)
    v.emplace_back(x);
  return v;
}

/// Scales a nonzero direction to the primitive integer vector on its ray.
inline RatVec primitive_direction(const RatVec &v) {
  Int l = 1;
  for (const auto &x : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Int> z(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * l;
    z[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  RatVec out(v.size());
  if (g == 0)
    return out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = Rat(Int(z[i] / g));
  return out;
}

inline std::string to_string(const RatVec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

} // namespace skelpot
