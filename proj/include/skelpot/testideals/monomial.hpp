#pragma once

#include "skelpot/exactla/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace skelpot::testideals {

using Exponent = std::vector<std::int64_t>;

struct IdealError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool divides(const Exponent &a, const Exponent &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i])
      return false;
  return true;
}

/// p^e, refusing to overflow.
inline std::int64_t checked_pow(std::int64_t p, int e) {
  std::int64_t q = 1;
  for (int i = 0; i < e; ++i) {
    if (q > std::numeric_limits<std::int64_t>::max() / p)
      throw std::overflow_error("p^e overflows 64 bits");
    q *= p;
  }
  return q;
}

inline bool is_prime(std::int64_t p) {
  if (p < 2)
    return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

inline void require_prime(std::int64_t p) {
  if (!is_prime(p))
    throw IdealError(std::to_string(p) + " is not prime");
}

/// Monomial ideal in k[x_1..x_n], stored as its minimal generators (an
/// antichain, sorted). The zero ideal has no generators; the unit ideal is
/// generated by the zero exponent.
class MonomialIdeal {
public:
  explicit MonomialIdeal(std::size_t n = 0, std::vector<Exponent> gens = {})
      : n_(n), gens_(std::move(gens)) {
    for (const auto &g : gens_) {
      if (g.size() != n_)
        throw DimensionMismatch("generator has " + std::to_string(g.size()) +
                                " exponents in a ring with " + std::to_string(n_) + " variables");
      for (auto x : g)
        if (x < 0)
          throw IdealError("negative exponent");
    }
    minimalize();
  }

  static MonomialIdeal zero(std::size_t n) { return MonomialIdeal(n); }
  static MonomialIdeal unit(std::size_t n) { return MonomialIdeal(n, {Exponent(n, 0)}); }

  std::size_t num_vars() const { return n_; }
  const std::vector<Exponent> &generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return gens_.size() == 1 && std::all_of(gens_[0].begin(), gens_[0].end(), [](auto x) { return x == 0; }); }

  /// x^u lies in the ideal.
  bool contains(const Exponent &u) const {
    if (u.size() != n_)
      throw DimensionMismatch("monomial has the wrong number of variables");
    return std::any_of(gens_.begin(), gens_.end(), [&](const Exponent &g) { return divides(g, u); });
  }

  /// other is a subset of this ideal.
  bool contains(const MonomialIdeal &other) const {
    require_same_ring(other);
    return std::all_of(other.gens_.begin(), other.gens_.end(),
                       [&](const Exponent &g) { return contains(g); });
  }

  void require_same_ring(const MonomialIdeal &other) const {
    if (other.n_ != n_)
      throw DimensionMismatch("ideals live in rings with different numbers of variables");
  }

  friend bool operator==(const MonomialIdeal &, const MonomialIdeal &) = default;

private:
  void minimalize() {
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    std::vector<Exponent> keep;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      bool redundant = false;
      for (std::size_t j = 0; j < gens_.size() && !redundant; ++j)
        redundant = j != i && divides(gens_[j], gens_[i]);
      if (!redundant)
        keep.push_back(gens_[i]);
    }
    gens_ = std::move(keep);
  }

  std::size_t n_;
  std::vector<Exponent> gens_;
};

inline std::string to_string(const MonomialIdeal &a) {
  if (a.is_zero())
    return "(0)";
  static const char *names[] = {"x", "y", "z"};
  std::string s = "(";
  for (std::size_t k = 0; k < a.generators().size(); ++k) {
    const auto &g = a.generators()[k];
    if (k)
      s += ", ";
    std::string mono;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g[i] == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += a.num_vars() <= 3 ? names[i] : "x" + std::to_string(i + 1);
      if (g[i] > 1)
        mono += "^" + std::to_string(g[i]);
    }
    s += mono.empty() ? "1" : mono;
  }
  return s + ")";
}

inline MonomialIdeal ideal_sum(const MonomialIdeal &a, const MonomialIdeal &b) {
  a.require_same_ring(b);
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return MonomialIdeal(a.num_vars(), std::move(gens));
}

inline MonomialIdeal product(const MonomialIdeal &a, const MonomialIdeal &b) {
  a.require_same_ring(b);
  std::vector<Exponent> gens;
  for (const auto &g : a.generators())
    for (const auto &h : b.generators()) {
      Exponent s(g.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        s[i] = g[i] + h[i];
      gens.push_back(std::move(s));
    }
  return MonomialIdeal(a.num_vars(), std::move(gens));
}

/// Explicit a^m; a^0 is the unit ideal.
inline MonomialIdeal power(const MonomialIdeal &a, std::int64_t m) {
  if (m < 0)
    throw IdealError("negative ideal power");
  MonomialIdeal out = MonomialIdeal::unit(a.num_vars());
  for (std::int64_t i = 0; i < m; ++i)
    out = product(out, a);
  return out;
}

/// a^[p^e]: every generator raised to the p^e-th power.
inline MonomialIdeal frobenius_power(const MonomialIdeal &a, std::int64_t p, int e) {
  require_prime(p);
  if (e < 0)
    throw IdealError("negative Frobenius exponent");
  std::int64_t q = checked_pow(p, e);
  std::vector<Exponent> gens;
  for (auto g : a.generators()) {
    for (auto &x : g)
      x *= q;
    gens.push_back(std::move(g));
  }
  return MonomialIdeal(a.num_vars(), std::move(gens));
}

/// a^[1/p^e]: the smallest ideal b with a inside b^[p^e]. For monomial ideals
/// it is generated by the componentwise floors of the generators.
inline MonomialIdeal frobenius_root(const MonomialIdeal &a, std::int64_t p, int e) {
  require_prime(p);
  if (e < 0)
    throw IdealError("negative Frobenius exponent");
  std::int64_t q = checked_pow(p, e);
  std::vector<Exponent> gens;
  for (auto g : a.generators()) {
    for (auto &x : g)
      x /= q;
    gens.push_back(std::move(g));
  }
  return MonomialIdeal(a.num_vars(), std::move(gens));
}

} // namespace skelpot::testideals
