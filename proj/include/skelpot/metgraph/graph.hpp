#pragma once

#include "skelpot/exactla/rational.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace skelpot::metgraph {

struct GraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  Rat length;
  long weight = 1;
};

/// Finite connected graph with positive rational edge lengths and positive
/// integer edge weights. Loops and parallel edges are allowed.
class MetrizedGraph {
public:
  MetrizedGraph() = default;

  MetrizedGraph(std::vector<std::string> names, std::vector<Edge> edges)
      : names_(std::move(names)), edges_(std::move(edges)) {
    if (names_.empty())
      throw GraphError("graph has no vertices");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw GraphError("duplicate vertex name \"" + names_[i] + "\"");
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto &ed = edges_[e];
      if (ed.a >= names_.size() || ed.b >= names_.size())
        throw GraphError("edge " + std::to_string(e) + " has an unknown endpoint");
      if (ed.length <= 0)
        throw GraphError("edge " + std::to_string(e) + " has non-positive length");
      if (ed.weight <= 0)
        throw GraphError("edge " + std::to_string(e) + " has non-positive weight");
    }
    if (!connected())
      throw GraphError("graph is not connected");
  }

  std::size_t num_vertices() const { return names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<std::string> &names() const { return names_; }
  const std::string &name(std::size_t v) const { return names_.at(v); }
  const std::vector<Edge> &edges() const { return edges_; }
  const Edge &edge(std::size_t e) const { return edges_.at(e); }

  std::size_t vertex_index(const std::string &name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name)
        return i;
    throw GraphError("unknown vertex \"" + name + "\"");
  }

  Rat total_length() const {
    Rat s = 0;
    for (const auto &e : edges_)
      s += e.length;
    return s;
  }

  friend bool operator==(const MetrizedGraph &x, const MetrizedGraph &y) {
    if (x.names_ != y.names_ || x.edges_.size() != y.edges_.size())
      return false;
    for (std::size_t e = 0; e < x.edges_.size(); ++e) {
      const auto &p = x.edges_[e], &q = y.edges_[e];
      if (p.a != q.a || p.b != q.b || p.length != q.length || p.weight != q.weight)
        return false;
    }
    return true;
  }

private:
  bool connected() const {
    std::vector<std::size_t> parent(names_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t comps = names_.size();
    for (const auto &e : edges_) {
      auto ra = find(e.a), rb = find(e.b);
      if (ra != rb) {
        parent[ra] = rb;
        --comps;
      }
    }
    return comps == 1;
  }

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
};

/// A point of the metric graph: a vertex, or a point strictly inside an edge.
/// Edge endpoints are always canonicalized to the vertex.
class GraphPoint {
public:
  static GraphPoint vertex(std::size_t v) { return GraphPoint(true, v, Rat(0)); }

  /// Canonical point at `offset` along edge e (offset measured from e.a).
  static GraphPoint on_edge(const MetrizedGraph &g, std::size_t e, const Rat &offset) {
    if (e >= g.num_edges())
      throw GraphError("edge index " + std::to_string(e) + " out of range");
    const auto &ed = g.edge(e);
    if (offset < 0 || offset > ed.length)
      throw GraphError("offset " + to_string(offset) + " outside edge " + std::to_string(e));
    if (offset == 0)
      return vertex(ed.a);
    if (offset == ed.length)
      return vertex(ed.b);
    return GraphPoint(false, e, offset);
  }

  bool is_vertex() const { return is_vertex_; }
  std::size_t vertex_id() const { return index_; }
  std::size_t edge_id() const { return index_; }
  const Rat &offset() const { return offset_; }

  friend bool operator==(const GraphPoint &x, const GraphPoint &y) {
    return x.is_vertex_ == y.is_vertex_ && x.index_ == y.index_ && x.offset_ == y.offset_;
  }
  /// Vertices first (by id), then edge points by (edge, offset).
  friend bool operator<(const GraphPoint &x, const GraphPoint &y) {
    if (x.is_vertex_ != y.is_vertex_)
      return x.is_vertex_;
    if (x.index_ != y.index_)
      return x.index_ < y.index_;
    return x.offset_ < y.offset_;
  }

  std::string describe(const MetrizedGraph &g) const {
    if (is_vertex_)
      return g.name(index_);
    return "edge " + std::to_string(index_) + " @ " + to_string(offset_);
  }

private:
  GraphPoint(bool v, std::size_t i, Rat off) : is_vertex_(v), index_(i), offset_(std::move(off)) {}
  bool is_vertex_;
  std::size_t index_;
  Rat offset_;
};

/// Degree of the curvature form on each component: one rational per vertex.
struct CurvatureData {
  std::vector<Rat> degree;

  Rat total() const {
    Rat s = 0;
    for (const auto &d : degree)
      s += d;
    return s;
  }
  void check(const MetrizedGraph &g) const {
    if (degree.size() != g.num_vertices())
      throw DimensionMismatch("curvature data has " + std::to_string(degree.size()) +
                              " degrees for a graph with " +
                              std::to_string(g.num_vertices()) + " vertices");
  }
  CurvatureData scaled(const Rat &t) const {
    CurvatureData c = *this;
    for (auto &d : c.degree)
      d *= t;
    return c;
  }
};

} // namespace skelpot::metgraph
