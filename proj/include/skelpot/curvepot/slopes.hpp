#pragma once

#include "skelpot/metgraph/measure.hpp"

namespace skelpot::curvepot {

using namespace skelpot::metgraph;

struct DirectionalSlope {
  Direction direction;
  long weight;
  Rat slope;
};

struct PointSlopes {
  GraphPoint point;
  std::vector<DirectionalSlope> directions;
  Rat degree;  // curvature degree, zero away from vertices
  Rat excess;  // sum of weight * slope, plus degree
};

/// Weighted outgoing slope sums at every vertex and breakpoint of F.
struct SlopeReport {
  std::vector<PointSlopes> points;

  bool all_nonnegative() const {
    return std::all_of(points.begin(), points.end(),
                       [](const PointSlopes &p) { return p.excess >= 0; });
  }

  /// Recomputes every excess from its parts.
  bool consistent() const {
    for (const auto &p : points) {
      Rat s = p.degree;
      for (const auto &d : p.directions)
        s += d.weight * d.slope;
      if (s != p.excess)
        return false;
    }
    return true;
  }
};

inline SlopeReport slope_report(const MetrizedGraph &g, const CurvatureData &theta,
                                const PLFunction &f, std::vector<GraphPoint> extra = {}) {
  theta.check(g);
  f.check(g);
  auto pts = f.canonical_points(g);
  pts.insert(pts.end(), extra.begin(), extra.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  SlopeReport rep;
  for (const auto &x : pts) {
    PointSlopes ps{x, {}, x.is_vertex() ? theta.degree[x.vertex_id()] : Rat(0), Rat(0)};
    ps.excess = ps.degree;
    for (const auto &d : directions_at(g, x)) {
      long w = g.edge(d.edge).weight;
      Rat s = f.slope(g, x, d);
      ps.excess += w * s;
      ps.directions.push_back({d, w, std::move(s)});
    }
    rep.points.push_back(std::move(ps));
  }
  return rep;
}

/// theta-psh test: weighted slope sum plus degree is nonnegative everywhere.
inline std::pair<bool, SlopeReport> is_theta_psh(const MetrizedGraph &g, const CurvatureData &theta,
                                                 const PLFunction &f) {
  auto rep = slope_report(g, theta, f);
  bool ok = rep.all_nonnegative();
  return {ok, std::move(rep)};
}

/// Monge-Ampere measure of F: the slope excess at each canonical point. Every
/// vertex of nonzero degree carries an atom, even when its mass is zero.
inline AtomicMeasure ma_measure(const MetrizedGraph &g, const CurvatureData &theta,
                                const PLFunction &f) {
  AtomicMeasure m;
  const auto rep = slope_report(g, theta, f);
  for (const auto &p : rep.points)
    if (p.excess != 0 || p.degree != 0)
      m.add(p.point, p.excess);
  return m;
}

/// dd^c F: the pure Laplacian part, a signed measure of total mass zero.
inline AtomicMeasure dd_c(const MetrizedGraph &g, const PLFunction &f) {
  CurvatureData zero{std::vector<Rat>(g.num_vertices(), Rat(0))};
  return ma_measure(g, zero, f).without_zeros();
}

/// Degrees of theta + dd^c F on a graph where F is affine on every edge.
inline CurvatureData twisted(const MetrizedGraph &g, const CurvatureData &theta,
                             const PLFunction &f) {
  CurvatureData out = theta;
  const auto lap = dd_c(g, f);
  for (const auto &a : lap.atoms()) {
    if (!a.point.is_vertex())
      throw GraphError("twisted curvature needs a function affine on edges");
    out.degree[a.point.vertex_id()] += a.mass;
  }
  return out;
}

} // namespace skelpot::curvepot
