#pragma once

#include "skelpot/exactla/linalg.hpp"
#include "skelpot/exactla/lp.hpp"
#include "skelpot/testideals/monomial.hpp"

#include <functional>
#include <optional>

namespace skelpot::testideals {

struct StabilizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// b^m kept unexpanded; membership is decided from the generators of b.
struct IdealPower {
  MonomialIdeal base;
  std::int64_t exponent = 1;
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

} // namespace detail

/// Decides x^t in b^N for a fixed b: is there an integer c >= 0 with
/// sum c_j g_j <= t and sum c_j >= N? (Dropping factors keeps a product
/// inside t, so ">= N" and "= N" agree.) Branches on one c_j at a time and
/// prunes with the LP relaxation over the remaining generators. By duality
/// that relaxation is min y.t over the vertices y of {y >= 0 : g_j.y >= 1},
/// a region that depends on the generators only, so its vertices are
/// computed once per suffix of the generator list.
class PowerMembership {
public:
  explicit PowerMembership(const MonomialIdeal &b) : n_(b.num_vars()), gens_(b.generators()) {
    unit_ = std::any_of(gens_.begin(), gens_.end(),
                        [](const Exponent &g) { return std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; }); });
    if (!unit_)
      for (std::size_t s = 0; s < gens_.size(); ++s)
        dual_.push_back(dual_vertices(s));
  }

  bool contains(std::int64_t N, const Exponent &t) const {
    if (N < 0)
      throw IdealError("negative ideal power");
    if (t.size() != n_)
      throw DimensionMismatch("monomial has the wrong number of variables");
    if (std::any_of(t.begin(), t.end(), [](auto x) { return x < 0; }))
      return false;
    if (N == 0 || unit_)
      return true;
    if (gens_.empty())
      return false;
    return reaches(0, N, t);
  }

private:
  // A dual vertex y = num / den, den > 0.
  struct Vertex {
    std::vector<std::int64_t> num;
    std::int64_t den;
  };

  std::vector<Vertex> dual_vertices(std::size_t from) const {
    // Rows a.y >= rhs: the generators from `from` on, then y_i >= 0.
    RatMatrix rows;
    RatVec rhs;
    for (std::size_t j = from; j < gens_.size(); ++j) {
      RatVec r;
      for (auto x : gens_[j])
        r.emplace_back(static_cast<long>(x));
      rows.push_back(std::move(r));
      rhs.emplace_back(1);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      RatVec r(n_, Rat(0));
      r[i] = 1;
      rows.push_back(std::move(r));
      rhs.emplace_back(0);
    }
    std::vector<RatVec> found;
    std::vector<std::size_t> pick(n_);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t next) {
      if (depth == n_) {
        RatMatrix a;
        RatVec b;
        for (auto k : pick) {
          a.push_back(rows[k]);
          b.push_back(rhs[k]);
        }
        auto sol = solve(a, b);
        if (!sol || !sol->unique)
          return;
        for (std::size_t k = 0; k < rows.size(); ++k)
          if (dot(rows[k], sol->x) < rhs[k])
            return;
        if (std::find(found.begin(), found.end(), sol->x) == found.end())
          found.push_back(sol->x);
        return;
      }
      for (std::size_t k = next; k < rows.size(); ++k) {
        pick[depth] = k;
        choose(depth + 1, k + 1);
      }
    };
    choose(0, 0);
    std::vector<Vertex> out;
    for (const auto &y : found) {
      Int den = 1;
      for (const auto &c : y)
        den = lcm(den, Int(c.get_den()));
      Vertex v{{}, den.get_si()};
      for (const auto &c : y)
        v.num.push_back(Int(c * Rat(den)).get_si());
      out.push_back(std::move(v));
    }
    return out;
  }

  // floor of the LP optimum max sum c over generators from `from` on. A
  // vertex whose product overflows is skipped: the bound only prunes.
  std::int64_t lp_bound(std::size_t from, const Exponent &t) const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto &v : dual_[from]) {
      std::int64_t s = 0, term = 0;
      bool overflow = false;
      for (std::size_t i = 0; i < n_ && !overflow; ++i)
        overflow = __builtin_mul_overflow(v.num[i], t[i], &term) || __builtin_add_overflow(s, term, &s);
      if (!overflow)
        best = std::min(best, s / v.den);  // s >= 0
    }
    return best;
  }

  // Invariant: t >= 0 coordinatewise.
  bool reaches(std::size_t from, std::int64_t r, const Exponent &t) const {
    if (r <= 0)
      return true;
    if (from == gens_.size() || lp_bound(from, t) < r)
      return false;
    const Exponent &g = gens_[from];
    std::int64_t cap = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < n_; ++i)
      if (g[i] > 0)
        cap = std::min(cap, t[i] / g[i]);
    if (from + 1 == gens_.size())
      return cap >= r;
    if (from + 2 == gens_.size()) {
      // c g + (r - c) h <= t for some integer c in [0, r].
      const Exponent &h = gens_[from + 1];
      std::int64_t lo = 0, hi = r;
      for (std::size_t i = 0; i < n_; ++i) {
        std::int64_t slope = g[i] - h[i], room = t[i] - r * h[i];
        if (slope > 0)
          hi = std::min(hi, detail::floor_div(room, slope));
        else if (slope < 0)
          lo = std::max(lo, -detail::floor_div(room, -slope));  // ceil(room / slope)
        else if (room < 0)
          return false;
      }
      return lo <= hi;
    }
    cap = std::min(cap, r);
    Exponent rest = t;
    for (std::int64_t c = 0; c <= cap; ++c) {
      if (reaches(from + 1, r - c, rest))
        return true;
      for (std::size_t i = 0; i < n_; ++i)
        rest[i] -= g[i];
    }
    return false;
  }

  std::size_t n_;
  std::vector<Exponent> gens_;
  bool unit_ = false;
  std::vector<std::vector<Vertex>> dual_;
};

/// x^t lies in b^N.
inline bool power_contains(const MonomialIdeal &b, std::int64_t N, const Exponent &t) {
  return PowerMembership(b).contains(N, t);
}

namespace detail {

/// Minimal generators of an up-set of exponents inside `box`: for each prefix
/// the least admissible last exponent, by bisection.
inline std::vector<Exponent> staircase(const Exponent &box,
                                       const std::function<bool(const Exponent &)> &member) {
  const std::size_t n = box.size();
  std::vector<Exponent> gens;
  Exponent w(n, 0);
  std::function<void(std::size_t)> sweep = [&](std::size_t i) {
    if (i + 1 < n) {
      for (w[i] = 0; w[i] <= box[i]; ++w[i])
        sweep(i + 1);
      return;
    }
    w[i] = box[i];
    if (!member(w))
      return;
    std::int64_t lo = 0, hi = box[i];  // member at hi
    while (lo < hi) {
      std::int64_t mid = lo + (hi - lo) / 2;
      w[i] = mid;
      if (member(w))
        hi = mid;
      else
        lo = mid + 1;
    }
    w[i] = lo;
    gens.push_back(w);
  };
  if (n > 0)
    sweep(0);
  return gens;
}

} // namespace detail

/// (b^N)^[1/q]: x^w is in it iff x^(q w + (q - 1)) lies in b^N.
inline MonomialIdeal frobenius_root_of_power(const MonomialIdeal &b, std::int64_t N,
                                             std::int64_t q) {
  const std::size_t n = b.num_vars();
  if (N == 0 || n == 0)
    return b.is_zero() && N > 0 ? MonomialIdeal::zero(n) : MonomialIdeal::unit(n);
  if (b.is_zero())
    return MonomialIdeal::zero(n);
  // Generators of b^N have coordinates at most N max g_i.
  Exponent box(n, 0);
  for (const auto &g : b.generators())
    for (std::size_t i = 0; i < n; ++i)
      box[i] = std::max(box[i], N * g[i] / q);
  PowerMembership power(b);
  auto member = [&](const Exponent &w) {
    Exponent t(n);
    for (std::size_t i = 0; i < n; ++i)
      t[i] = q * w[i] + (q - 1);
    return power.contains(N, t);
  };
  return MonomialIdeal(n, detail::staircase(box, member));
}

/// Exponents w with w + 1 in the interior of mu * Newt(b), Newt(b) the
/// convex hull of the exponents of b plus the positive orthant. Every term of
/// the test ideal chain of b^mu lies in this ideal: from
/// sum c_j g_j <= q (w + 1) - 1 with sum c_j >= mu q, dividing by q puts
/// w + 1 - 1/q inside mu * Newt(b). Decided by one exact LP per query.
inline MonomialIdeal newton_interior_bound(const MonomialIdeal &b, const Rat &mu) {
  const std::size_t n = b.num_vars();
  if (mu == 0 || n == 0)
    return b.is_zero() && mu > 0 ? MonomialIdeal::zero(n) : MonomialIdeal::unit(n);
  if (b.is_zero())
    return MonomialIdeal::zero(n);
  const auto &gens = b.generators();
  const std::size_t k = gens.size();
  Exponent box(n, 0);
  for (const auto &g : gens)
    for (std::size_t i = 0; i < n; ++i)
      box[i] = std::max(box[i], ceil_int(mu * Rat(static_cast<long>(g[i]))).get_si());
  auto member = [&](const Exponent &w) {
    // max t subject to sum c_j g_j + t <= w + 1, sum c_j = mu, c >= 0.
    LinearProgram lp;
    lp.num_vars = k + 1;
    lp.nonneg.assign(k + 1, true);
    lp.nonneg[k] = false;
    lp.objective.assign(k + 1, Rat(0));
    lp.objective[k] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      RatVec row(k + 1);
      for (std::size_t j = 0; j < k; ++j)
        row[j] = static_cast<long>(gens[j][i]);
      row[k] = 1;
      lp.add(std::move(row), Relation::LessEq, Rat(static_cast<long>(w[i] + 1)));
    }
    RatVec sum(k + 1, Rat(1));
    sum[k] = 0;
    lp.add(std::move(sum), Relation::Equal, mu);
    LpResult r = lp_solve(lp);
    return r.status == LpStatus::Optimal && *r.value > 0;
  };
  return MonomialIdeal(n, detail::staircase(box, member));
}

enum class StopRule {
  /// Stop once the chain reaches newton_interior_bound, which contains every
  /// later term: the value is then provably final.
  Certified,
  /// Stop at the first repeat. Cheap but can stop early: for (xy)^(9/5) with
  /// p = 2 the terms at e = 1, 2 agree and e = 3 is strictly larger.
  FirstRepeat,
};

struct TestIdealOptions {
  int max_e = 12;
  StopRule rule = StopRule::Certified;
};

/// The chain (b^(s ceil(lambda p^e)))^[1/p^e] for e = 1, 2, ... up to the stopping point.
struct TestIdealTrace {
  std::vector<MonomialIdeal> chain;
  int stable_at = 0;
  MonomialIdeal result() const { return chain.back(); }
};

inline TestIdealTrace test_ideal_trace(const IdealPower &a, const Rat &lambda, std::int64_t p,
                                       const TestIdealOptions &opts = {}) {
  require_prime(p);
  if (lambda < 0)
    throw IdealError("negative exponent lambda");
  if (a.exponent < 0)
    throw IdealError("negative ideal power");
  std::optional<MonomialIdeal> bound;
  if (opts.rule == StopRule::Certified)
    bound = newton_interior_bound(a.base, lambda * Rat(static_cast<long>(a.exponent)));
  TestIdealTrace tr;
  for (int e = 1; e <= opts.max_e; ++e) {
    std::int64_t q = checked_pow(p, e);
    Int n_big = ceil_int(lambda * Rat(static_cast<long>(q)));
    if (!n_big.fits_slong_p())
      throw std::overflow_error("ceil(lambda p^e) overflows");
    std::int64_t N = n_big.get_si() * a.exponent;
    tr.chain.push_back(frobenius_root_of_power(a.base, N, q));
    bool repeat = tr.chain.size() >= 2 && tr.chain[tr.chain.size() - 2] == tr.chain.back();
    bool stop = opts.rule == StopRule::Certified ? tr.chain.back() == *bound : repeat;
    if (stop) {
      tr.stable_at = e;
      return tr;
    }
  }
  throw StabilizationError("test ideal chain did not stabilize by e = " +
                           std::to_string(opts.max_e));
}

/// tau(a^lambda) in characteristic p.
inline MonomialIdeal test_ideal(const MonomialIdeal &a, const Rat &lambda, std::int64_t p,
                                const TestIdealOptions &opts = {}) {
  return test_ideal_trace(IdealPower{a, 1}, lambda, p, opts).result();
}

/// tau((b^m)^lambda) without expanding b^m.
inline MonomialIdeal test_ideal(const IdealPower &a, const Rat &lambda, std::int64_t p,
                                const TestIdealOptions &opts = {}) {
  return test_ideal_trace(a, lambda, p, opts).result();
}

} // namespace skelpot::testideals
