#pragma once

// Seeded random instances for property tests. Every generator takes the
// engine by reference so a test is reproducible from its seed alone.

#include "skelpot/curvepot/potential.hpp"
#include "skelpot/testideals/monomial.hpp"

#include <random>

namespace gen {

using namespace skelpot;
using namespace skelpot::metgraph;
using Rng = std::mt19937_64;

inline long uniform(Rng &rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline bool coin(Rng &rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// n / d in lowest terms; gmpxx does not reduce on construction.
inline Rat frac(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

/// num / den with num in [lo * den, hi * den] and den in [1, max_den].
inline Rat rational(Rng &rng, long lo, long hi, long max_den) {
  long den = uniform(rng, 1, max_den);
  return frac(uniform(rng, lo * den, hi * den), den);
}

struct GraphShape {
  std::size_t max_vertices = 6;
  std::size_t max_edges = 9;
  long max_den = 10;
  long max_weight = 2;
  bool loops = true;
};

/// Random spanning tree plus extra edges (parallel edges and loops allowed).
inline MetrizedGraph graph(Rng &rng, const GraphShape &shape = {}) {
  const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(shape.max_vertices)));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back("v" + std::to_string(i));
  auto length = [&] { return frac(uniform(rng, 1, 3 * shape.max_den), uniform(rng, 1, shape.max_den)); };
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v)
    edges.push_back({static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(v) - 1)), v, length(),
                     uniform(rng, 1, shape.max_weight)});
  const long room = static_cast<long>(shape.max_edges) - static_cast<long>(edges.size());
  const long extra = room > 0 ? uniform(rng, 0, std::min(room, 3L)) : 0;
  for (long k = 0; k < extra; ++k) {
    auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
    if (a == b && !shape.loops)
      continue;
    edges.push_back({a, b, length(), uniform(rng, 1, shape.max_weight)});
  }
  if (edges.empty() && n == 1 && shape.loops)
    edges.push_back({0, 0, length(), 1});
  return MetrizedGraph(names, std::move(edges));
}

/// Curvature with positive total degree; individual degrees may be negative
/// when `signed_degrees`.
inline CurvatureData nef_theta(Rng &rng, const MetrizedGraph &g, bool signed_degrees = true) {
  CurvatureData th;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    th.degree.push_back(rational(rng, signed_degrees ? -1 : 0, 2, 4));
  Rat total = th.total();
  if (total <= 0)
    th.degree[0] += 1 - total;
  return th;
}

/// PL function with random vertex values and up to `max_breaks` interior
/// breakpoints per edge.
inline PLFunction pl_function(Rng &rng, const MetrizedGraph &g, int max_breaks = 2,
                              long value_range = 3) {
  std::vector<Rat> vals;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    vals.push_back(rational(rng, -value_range, value_range, 6));
  std::vector<std::vector<Breakpoint>> breaks(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const Rat &len = g.edge(e).length;
    const int k = static_cast<int>(uniform(rng, 0, max_breaks));
    std::vector<Rat> offs;
    for (int i = 0; i < k; ++i) {
      Rat t = frac(uniform(rng, 1, 7), 8);
      offs.push_back(t * len);
    }
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    for (const auto &o : offs)
      breaks[e].push_back({o, rational(rng, -value_range, value_range, 6)});
  }
  return PLFunction(g, std::move(vals), std::move(breaks));
}

/// A random theta-psh function: the solution of MA(F) = mu for a random
/// nonnegative mu of the right mass, including atoms inside edges.
inline PLFunction psh_function(Rng &rng, const MetrizedGraph &g, const CurvatureData &theta) {
  AtomicMeasure mu;
  std::vector<Rat> w;
  std::vector<GraphPoint> pts;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (coin(rng, 0.6))
      pts.push_back(GraphPoint::vertex(v));
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (coin(rng, 0.3))
      pts.push_back(GraphPoint::on_edge(g, e, g.edge(e).length * frac(uniform(rng, 1, 3), 4)));
  if (pts.empty())
    pts.push_back(GraphPoint::vertex(0));
  Rat sum = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    w.push_back(Rat(uniform(rng, 1, 5)));
    sum += w.back();
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    mu.add(pts[i], theta.total() * w[i] / sum);
  auto f = curvepot::solve_ma(g, theta, mu, 0);
  return add_constant(g, f, rational(rng, -2, 2, 3));
}

struct PshPair {
  PLFunction f;
  CurvatureData theta;
};

/// F with convex interior kinks only, and theta just large enough at every
/// vertex (plus a random nonnegative surplus) to make F theta-psh. Built
/// without solving anything.
inline PshPair psh_by_construction(Rng &rng, const MetrizedGraph &g) {
  std::vector<Rat> vals;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    vals.push_back(rational(rng, -3, 3, 4));
  std::vector<std::vector<Breakpoint>> breaks(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto &ed = g.edge(e);
    if (!coin(rng, 0.4))
      continue;
    // One kink strictly below the chord: both outgoing slopes rise.
    Rat t = frac(uniform(rng, 1, 3), 4);
    Rat chord = vals[ed.a] + t * (vals[ed.b] - vals[ed.a]);
    breaks[e].push_back({t * ed.length, chord - rational(rng, 0, 2, 3) - Rat(1, 7)});
  }
  PLFunction f(g, std::move(vals), std::move(breaks));
  CurvatureData theta{std::vector<Rat>(g.num_vertices(), Rat(0))};
  auto lap = curvepot::dd_c(g, f);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    Rat need = -lap.mass_at(GraphPoint::vertex(v));
    theta.degree[v] = need + (coin(rng, 0.5) ? rational(rng, 0, 2, 3) : Rat(0));
  }
  return {std::move(f), std::move(theta)};
}

inline testideals::MonomialIdeal ideal(Rng &rng, std::size_t n, int max_gens, long max_exp) {
  std::vector<testideals::Exponent> gens;
  const int k = static_cast<int>(uniform(rng, 1, max_gens));
  for (int i = 0; i < k; ++i) {
    testideals::Exponent g(n);
    for (auto &x : g)
      x = uniform(rng, 0, max_exp);
    gens.push_back(std::move(g));
  }
  return testideals::MonomialIdeal(n, std::move(gens));
}

inline long prime(Rng &rng) {
  static const long ps[] = {2, 3, 5};
  return ps[uniform(rng, 0, 2)];
}

} // namespace gen
