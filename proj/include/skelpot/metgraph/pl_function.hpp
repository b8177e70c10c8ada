#pragma once

#include "skelpot/metgraph/graph.hpp"

#include <functional>
#include <set>

namespace skelpot::metgraph {

struct Breakpoint {
  Rat offset;
  Rat value;
  friend bool operator==(const Breakpoint &, const Breakpoint &) = default;
};

/// Outgoing tangent direction at a point: along `edge`, towards increasing
/// offset when `forward`.
struct Direction {
  std::size_t edge;
  bool forward;
  friend bool operator==(const Direction &, const Direction &) = default;
};

/// Continuous piecewise linear function on a metrized graph: a value per
/// vertex plus interior breakpoints per edge. Slopes are rational; a model
/// function with integer slopes is the special case where every slope is an
/// integer.
class PLFunction {
public:
  PLFunction() = default;

  PLFunction(const MetrizedGraph &g, std::vector<Rat> vertex_values,
             std::vector<std::vector<Breakpoint>> breakpoints = {})
      : values_(std::move(vertex_values)), breaks_(std::move(breakpoints)) {
    if (breaks_.empty())
      breaks_.resize(g.num_edges());
    check(g);
  }

  static PLFunction constant(const MetrizedGraph &g, const Rat &c) {
    return PLFunction(g, std::vector<Rat>(g.num_vertices(), c));
  }

  const std::vector<Rat> &vertex_values() const { return values_; }
  const Rat &at_vertex(std::size_t v) const { return values_.at(v); }
  const std::vector<std::vector<Breakpoint>> &breakpoints() const { return breaks_; }
  const std::vector<Breakpoint> &breakpoints(std::size_t e) const { return breaks_.at(e); }

  void check(const MetrizedGraph &g) const {
    if (values_.size() != g.num_vertices() || breaks_.size() != g.num_edges())
      throw DimensionMismatch("PL function does not live on this graph");
    for (std::size_t e = 0; e < breaks_.size(); ++e) {
      Rat prev = 0;
      for (const auto &b : breaks_[e]) {
        if (b.offset <= prev || b.offset >= g.edge(e).length)
          throw GraphError("breakpoints on edge " + std::to_string(e) +
                           " must be strictly increasing inside the edge");
        prev = b.offset;
      }
    }
  }

  /// (offset, value) along edge e including both endpoints.
  std::vector<Breakpoint> profile(const MetrizedGraph &g, std::size_t e) const {
    const auto &ed = g.edge(e);
    std::vector<Breakpoint> p;
    p.reserve(breaks_[e].size() + 2);
    p.push_back({Rat(0), values_[ed.a]});
    p.insert(p.end(), breaks_[e].begin(), breaks_[e].end());
    p.push_back({ed.length, values_[ed.b]});
    return p;
  }

  Rat value_on_edge(const MetrizedGraph &g, std::size_t e, const Rat &offset) const {
    auto p = profile(g, e);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (offset >= p[i].offset && offset <= p[i + 1].offset) {
        Rat t = (offset - p[i].offset) / (p[i + 1].offset - p[i].offset);
        return p[i].value + t * (p[i + 1].value - p[i].value);
      }
    }
    throw GraphError("offset outside edge");
  }

  Rat operator()(const MetrizedGraph &g, const GraphPoint &x) const {
    if (x.is_vertex())
      return values_.at(x.vertex_id());
    return value_on_edge(g, x.edge_id(), x.offset());
  }

  /// Slope of the function leaving point x in direction d.
  Rat slope(const MetrizedGraph &g, const GraphPoint &x, const Direction &d) const {
    auto p = profile(g, d.edge);
    Rat at = x.is_vertex() ? (d.forward ? Rat(0) : g.edge(d.edge).length) : x.offset();
    if (d.forward) {
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (p[i].offset <= at && at < p[i + 1].offset)
          return (p[i + 1].value - p[i].value) / (p[i + 1].offset - p[i].offset);
    } else {
      for (std::size_t i = p.size() - 1; i > 0; --i)
        if (p[i - 1].offset < at && at <= p[i].offset)
          return (p[i - 1].value - p[i].value) / (p[i].offset - p[i - 1].offset);
    }
    throw GraphError("no segment in the requested direction");
  }

  /// Vertices followed by all interior breakpoints.
  std::vector<GraphPoint> canonical_points(const MetrizedGraph &g) const {
    std::vector<GraphPoint> pts;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      pts.push_back(GraphPoint::vertex(v));
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      for (const auto &b : breaks_[e])
        pts.push_back(GraphPoint::on_edge(g, e, b.offset));
    return pts;
  }

  /// Same function without breakpoints where the slope does not change.
  PLFunction simplified(const MetrizedGraph &g) const {
    PLFunction out = *this;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      auto p = profile(g, e);
      std::vector<Breakpoint> keep;
      Breakpoint last = p.front();
      for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        Rat s1 = (p[i].value - last.value) / (p[i].offset - last.offset);
        Rat s2 = (p[i + 1].value - p[i].value) / (p[i + 1].offset - p[i].offset);
        if (s1 != s2) {
          keep.push_back(p[i]);
          last = p[i];
        }
      }
      out.breaks_[e] = std::move(keep);
    }
    return out;
  }

  bool all_slopes_integral(const MetrizedGraph &g) const {
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      auto p = profile(g, e);
      for (std::size_t i = 0; i + 1 < p.size(); ++i)
        if (!is_integral((p[i + 1].value - p[i].value) / (p[i + 1].offset - p[i].offset)))
          return false;
    }
    return true;
  }

  friend bool operator==(const PLFunction &, const PLFunction &) = default;

private:
  std::vector<Rat> values_;
  std::vector<std::vector<Breakpoint>> breaks_;
};

/// Every outgoing direction at x (loops contribute two at their vertex).
inline std::vector<Direction> directions_at(const MetrizedGraph &g, const GraphPoint &x) {
  std::vector<Direction> dirs;
  if (!x.is_vertex()) {
    dirs.push_back({x.edge_id(), true});
    dirs.push_back({x.edge_id(), false});
    return dirs;
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (g.edge(e).a == x.vertex_id())
      dirs.push_back({e, true});
    if (g.edge(e).b == x.vertex_id())
      dirs.push_back({e, false});
  }
  return dirs;
}

/// Pointwise combination on the common refinement of breakpoints. With
/// `add_crossings`, zeros of (F - G) inside segments become breakpoints too
/// (needed for max/min).
inline PLFunction combine(const MetrizedGraph &g, const PLFunction &f, const PLFunction &h,
                          const std::function<Rat(const Rat &, const Rat &)> &op,
                          bool add_crossings = false) {
  f.check(g);
  h.check(g);
  std::vector<Rat> vals(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    vals[v] = op(f.at_vertex(v), h.at_vertex(v));
  std::vector<std::vector<Breakpoint>> br(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    std::set<Rat> offs;
    for (const auto &b : f.breakpoints(e))
      offs.insert(b.offset);
    for (const auto &b : h.breakpoints(e))
      offs.insert(b.offset);
    if (add_crossings) {
      std::vector<Rat> grid{Rat(0)};
      grid.insert(grid.end(), offs.begin(), offs.end());
      grid.push_back(g.edge(e).length);
      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        Rat d0 = f.value_on_edge(g, e, grid[i]) - h.value_on_edge(g, e, grid[i]);
        Rat d1 = f.value_on_edge(g, e, grid[i + 1]) - h.value_on_edge(g, e, grid[i + 1]);
        if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0))
          offs.insert(grid[i] + (grid[i + 1] - grid[i]) * d0 / (d0 - d1));
      }
    }
    for (const auto &o : offs)
      br[e].push_back({o, op(f.value_on_edge(g, e, o), h.value_on_edge(g, e, o))});
  }
  return PLFunction(g, std::move(vals), std::move(br)).simplified(g);
}

inline PLFunction add(const MetrizedGraph &g, const PLFunction &f, const PLFunction &h) {
  return combine(g, f, h, [](const Rat &a, const Rat &b) { return Rat(a + b); });
}

inline PLFunction subtract(const MetrizedGraph &g, const PLFunction &f, const PLFunction &h) {
  return combine(g, f, h, [](const Rat &a, const Rat &b) { return Rat(a - b); });
}

inline PLFunction pl_max(const MetrizedGraph &g, const PLFunction &f, const PLFunction &h) {
  return combine(
      g, f, h, [](const Rat &a, const Rat &b) { return a < b ? b : a; }, true);
}

inline PLFunction pl_min(const MetrizedGraph &g, const PLFunction &f, const PLFunction &h) {
  return combine(
      g, f, h, [](const Rat &a, const Rat &b) { return a < b ? a : b; }, true);
}

inline PLFunction add_constant(const MetrizedGraph &g, const PLFunction &f, const Rat &c) {
  return add(g, f, PLFunction::constant(g, c));
}

inline PLFunction scale(const MetrizedGraph &g, const PLFunction &f, const Rat &t) {
  return combine(g, f, f, [&](const Rat &a, const Rat &) { return Rat(t * a); });
}

/// Union of the canonical points of several functions, sorted and distinct.
inline std::vector<GraphPoint> common_points(const MetrizedGraph &g,
                                             std::initializer_list<const PLFunction *> fs) {
  std::vector<GraphPoint> pts;
  for (const auto *f : fs) {
    auto p = f->canonical_points(g);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// sup |f - h| over the graph (attained at a breakpoint of either).
inline Rat sup_distance(const MetrizedGraph &g, const PLFunction &f, const PLFunction &h) {
  Rat best = 0;
  for (const auto &x : common_points(g, {&f, &h}))
    best = std::max(best, rat_abs(f(g, x) - h(g, x)));
  return best;
}

/// f <= h everywhere.
inline bool dominated_by(const MetrizedGraph &g, const PLFunction &f, const PLFunction &h) {
  for (const auto &x : common_points(g, {&f, &h}))
    if (f(g, x) > h(g, x))
      return false;
  return true;
}

/// f == h as functions (breakpoint lists may differ by collinear points).
inline bool same_function(const MetrizedGraph &g, const PLFunction &f, const PLFunction &h) {
  return f.simplified(g) == h.simplified(g);
}

} // namespace skelpot::metgraph
