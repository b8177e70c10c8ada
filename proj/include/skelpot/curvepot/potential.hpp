#pragma once

#include "skelpot/curvepot/envelope.hpp"
#include "skelpot/exactla/linalg.hpp"

namespace skelpot::curvepot {

struct MassMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The theta-psh function F with MA(F) = mu and F(anchor) = 0. The graph is
/// subdivided at the interior atoms of mu; on the refinement F is affine on
/// edges and its vertex values solve a Laplacian system.
inline PLFunction solve_ma(const MetrizedGraph &g, const CurvatureData &theta,
                           const AtomicMeasure &mu, std::size_t anchor) {
  theta.check(g);
  if (anchor >= g.num_vertices())
    throw GraphError("anchor vertex out of range");
  for (const auto &a : mu.atoms()) {
    if (a.mass < 0)
      throw std::invalid_argument("measure has a negative atom at " + a.point.describe(g));
    if (a.point.is_vertex() ? a.point.vertex_id() >= g.num_vertices()
                            : a.point.edge_id() >= g.num_edges())
      throw GraphError("measure atom outside the graph");
  }
  if (mu.total_mass() != theta.total())
    throw MassMismatch("measure has mass " + to_string(mu.total_mass()) +
                       " but the curvature has total degree " + to_string(theta.total()));

  std::vector<GraphPoint> cuts;
  for (const auto &a : mu.atoms())
    cuts.push_back(a.point);
  Subdivision sd(g, cuts);
  const MetrizedGraph &fine = sd.graph();
  CurvatureData th = sd.push(theta);
  AtomicMeasure m = sd.push(mu);

  const std::size_t n = fine.num_vertices();
  RatMatrix lap(n, RatVec(n));
  RatVec rhs(n);
  for (const auto &e : fine.edges()) {
    if (e.a == e.b)
      continue;
    Rat k = Rat(e.weight) / e.length;
    lap[e.a][e.a] -= k;
    lap[e.a][e.b] += k;
    lap[e.b][e.b] -= k;
    lap[e.b][e.a] += k;
  }
  for (std::size_t v = 0; v < n; ++v)
    rhs[v] = m.mass_at(GraphPoint::vertex(v)) - th.degree[v];
  // The rows sum to zero, so one of them is redundant: trade it for the anchor.
  lap[anchor].assign(n, Rat(0));
  lap[anchor][anchor] = 1;
  rhs[anchor] = 0;
  auto sol = solve(lap, rhs);
  if (!sol || !sol->unique)
    throw std::logic_error("graph Laplacian system is singular");

  PLFunction f = sd.pull(PLFunction(fine, sol->x)).simplified(g);
  if (!(ma_measure(g, theta, f) == mu))
    throw std::logic_error("solve_ma result does not reproduce the measure");
  return f;
}

/// E(phi1, phi2) = 1/2 * integral of (phi1 - phi2) against MA(phi1) + MA(phi2).
inline Rat energy(const MetrizedGraph &g, const CurvatureData &theta, const PLFunction &phi1,
                  const PLFunction &phi2) {
  AtomicMeasure both = sum(ma_measure(g, theta, phi1), ma_measure(g, theta, phi2));
  return both.integrate(g, subtract(g, phi1, phi2)) / 2;
}

/// Integral of u - P(u) against MA(P(u)); zero when the envelope is correct.
inline Rat orthogonality_residual(const MetrizedGraph &g, const CurvatureData &theta,
                                  const PLFunction &u, const EnvelopeOptions &opts = {}) {
  PLFunction env = envelope(g, theta, u, opts).envelope;
  return ma_measure(g, theta, env).integrate(g, subtract(g, u, env));
}

} // namespace skelpot::curvepot
