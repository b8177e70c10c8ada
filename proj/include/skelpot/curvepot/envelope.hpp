#pragma once

#include "skelpot/curvepot/slopes.hpp"
#include "skelpot/exactla/lp.hpp"
#include "skelpot/metgraph/subdivide.hpp"

#include <stdexcept>

namespace skelpot::curvepot {

/// The envelope is identically -infinity: no theta-psh function lies below u.
struct NoPshFunction : std::runtime_error {
  NoPshFunction() : std::runtime_error("no theta-psh function exists (envelope is -infinity)") {}
};

struct LpTooLarge : std::length_error {
  using std::length_error::length_error;
};

struct LpSummary {
  std::size_t num_vars = 0;
  std::size_t num_constraints = 0;
  Rat objective;
};

struct EnvelopeResult {
  PLFunction envelope;
  LpSummary lp;
  SlopeReport certificate;
};

struct EnvelopeOptions {
  /// Re-solve with each vertex value as objective and require the same point.
  bool verify_uniqueness = true;
  /// 0 means no cap.
  std::size_t max_lp_vars = 0;
};

namespace detail {

/// Variables x_v = -F(v) >= 0. Row v encodes
///   sum_nu w (F(v_nu) - F(v)) / len + deg(v) >= 0.
inline LinearProgram envelope_lp(const MetrizedGraph &g, const CurvatureData &theta) {
  const std::size_t n = g.num_vertices();
  LinearProgram lp;
  lp.num_vars = n;
  lp.nonneg.assign(n, true);
  lp.objective.assign(n, Rat(-1));
  std::vector<RatVec> rows(n, RatVec(n));
  for (const auto &e : g.edges()) {
    if (e.a == e.b)
      continue;
    Rat k = Rat(e.weight) / e.length;
    rows[e.a][e.a] += k;
    rows[e.a][e.b] -= k;
    rows[e.b][e.b] += k;
    rows[e.b][e.a] -= k;
  }
  for (std::size_t v = 0; v < n; ++v)
    lp.add(std::move(rows[v]), Relation::GreaterEq, -theta.degree[v]);
  return lp;
}

} // namespace detail

/// theta-psh envelope of a PL function u: the largest theta-psh function
/// bounded above by u. The graph is subdivided at the breakpoints of u, the
/// problem is reduced to u = 0 by twisting theta with dd^c u, and the vertex
/// values are found by one exact LP.
inline EnvelopeResult envelope(const MetrizedGraph &g, const CurvatureData &theta,
                               const PLFunction &u, const EnvelopeOptions &opts = {}) {
  theta.check(g);
  u.check(g);
  std::vector<GraphPoint> cuts;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    for (const auto &b : u.breakpoints(e))
      cuts.push_back(GraphPoint::on_edge(g, e, b.offset));
  Subdivision sd(g, cuts);
  const MetrizedGraph &fine = sd.graph();
  PLFunction u_fine = sd.push(u);
  CurvatureData theta_fine = twisted(fine, sd.push(theta), u_fine);

  const std::size_t n = fine.num_vertices();
  if (opts.max_lp_vars != 0 && n > opts.max_lp_vars)
    throw LpTooLarge("envelope LP needs " + std::to_string(n) + " variables, cap is " +
                     std::to_string(opts.max_lp_vars));

  LinearProgram lp = detail::envelope_lp(fine, theta_fine);
  LpResult res = lp_solve(lp);
  if (res.status == LpStatus::Infeasible)
    throw NoPshFunction();
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("envelope LP unbounded although every variable is sign-bounded");

  const RatVec &x = *res.point;
  if (opts.verify_uniqueness) {
    for (std::size_t v = 0; v < n; ++v) {
      LinearProgram single = lp;
      single.objective.assign(n, Rat(0));
      single.objective[v] = -1;
      LpResult r = lp_solve(single);
      if (r.status != LpStatus::Optimal || *r.value != -x[v])
        throw std::logic_error("envelope LP optimum is not the pointwise maximum at vertex " +
                               fine.name(v));
    }
  }

  std::vector<Rat> fvals(n);
  for (std::size_t v = 0; v < n; ++v)
    fvals[v] = -x[v];
  PLFunction on_fine = add(fine, PLFunction(fine, std::move(fvals)), u_fine);
  PLFunction env = sd.pull(on_fine).simplified(g);

  EnvelopeResult out;
  out.envelope = env;
  out.lp = {n, 2 * n, *res.value};
  out.certificate = slope_report(g, theta, env, u.canonical_points(g));
  if (!out.certificate.all_nonnegative())
    throw std::logic_error("envelope failed its own theta-psh certificate");
  if (!dominated_by(g, env, u))
    throw std::logic_error("envelope exceeds the obstacle");
  return out;
}

} // namespace skelpot::curvepot
