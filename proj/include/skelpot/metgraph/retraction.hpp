#pragma once

#include "skelpot/metgraph/pl_function.hpp"

namespace skelpot::metgraph {

/// A subgraph given by vertex and edge membership flags.
struct Subgraph {
  std::vector<bool> vertices;
  std::vector<bool> edges;

  static Subgraph from_names(const MetrizedGraph &g, const std::vector<std::string> &vertex_names,
                             const std::vector<std::size_t> &edge_ids) {
    Subgraph s{std::vector<bool>(g.num_vertices(), false),
               std::vector<bool>(g.num_edges(), false)};
    for (const auto &n : vertex_names)
      s.vertices[g.vertex_index(n)] = true;
    for (auto e : edge_ids) {
      if (e >= g.num_edges())
        throw GraphError("edge index " + std::to_string(e) + " out of range");
      s.edges[e] = true;
      s.vertices[g.edge(e).a] = true;
      s.vertices[g.edge(e).b] = true;
    }
    return s;
  }
};

/// Deformation retraction of a graph onto a connected subgraph whose
/// complement consists of trees, each hanging from a single vertex.
class Retraction {
public:
  Retraction(const MetrizedGraph &g, Subgraph sub) : sub_(std::move(sub)) {
    const std::size_t nv = g.num_vertices(), ne = g.num_edges();
    if (sub_.vertices.size() != nv || sub_.edges.size() != ne)
      throw DimensionMismatch("subgraph selector does not match the graph");
    if (std::none_of(sub_.vertices.begin(), sub_.vertices.end(), [](bool b) { return b; }))
      throw GraphError("subgraph is empty");
    for (std::size_t e = 0; e < ne; ++e) {
      const auto &ed = g.edge(e);
      if (sub_.edges[e] && (!sub_.vertices[ed.a] || !sub_.vertices[ed.b]))
        throw GraphError("subgraph edge " + std::to_string(e) + " has an endpoint outside it");
      if (!sub_.edges[e] && sub_.vertices[ed.a] && sub_.vertices[ed.b])
        throw GraphError("edge " + std::to_string(e) +
                         " leaves the subgraph and returns to it: no canonical retraction");
    }
    // Connectivity of the subgraph.
    std::vector<std::size_t> comp(nv, npos);
    std::size_t root = 0;
    while (!sub_.vertices[root])
      ++root;
    flood(g, root, comp, 0, true);
    for (std::size_t v = 0; v < nv; ++v)
      if (sub_.vertices[v] && comp[v] != 0)
        throw GraphError("subgraph is not connected");
    // Hanging pieces: components of the complement.
    attach_.assign(nv, npos);
    for (std::size_t v = 0; v < nv; ++v)
      if (sub_.vertices[v])
        attach_[v] = v;
    std::size_t label = 1;
    for (std::size_t v = 0; v < nv; ++v) {
      if (sub_.vertices[v] || comp[v] != npos)
        continue;
      flood(g, v, comp, label, false);
      std::size_t size = 0, internal = 0, attaching = 0, at = npos;
      for (std::size_t w = 0; w < nv; ++w)
        size += comp[w] == label ? 1 : 0;
      for (std::size_t e = 0; e < ne; ++e) {
        const auto &ed = g.edge(e);
        bool ia = comp[ed.a] == label && !sub_.vertices[ed.a];
        bool ib = comp[ed.b] == label && !sub_.vertices[ed.b];
        if (ia && ib)
          ++internal;
        else if (ia || ib) {
          ++attaching;
          at = ia ? ed.b : ed.a;
        }
      }
      if (attaching != 1)
        throw GraphError("complement component containing \"" + g.name(v) + "\" attaches at " +
                         std::to_string(attaching) + " points: no canonical retraction");
      if (internal + 1 != size)
        throw GraphError("complement component containing \"" + g.name(v) +
                         "\" is not a tree");
      for (std::size_t w = 0; w < nv; ++w)
        if (comp[w] == label)
          attach_[w] = at;
      ++label;
    }
  }

  const Subgraph &subgraph() const { return sub_; }

  bool contains(const GraphPoint &x) const {
    return x.is_vertex() ? sub_.vertices[x.vertex_id()] : sub_.edges[x.edge_id()];
  }

  GraphPoint retract(const MetrizedGraph &g, const GraphPoint &x) const {
    if (contains(x))
      return x;
    if (x.is_vertex())
      return GraphPoint::vertex(attach_[x.vertex_id()]);
    const auto &ed = g.edge(x.edge_id());
    // One endpoint of a hanging edge may be the attachment vertex itself.
    std::size_t inner = sub_.vertices[ed.a] ? ed.b : ed.a;
    return GraphPoint::vertex(attach_[inner]);
  }

  /// F on the subgraph, extended constantly along every hanging tree. Values
  /// of `f` outside the subgraph are ignored.
  PLFunction compose(const MetrizedGraph &g, const PLFunction &f) const {
    f.check(g);
    std::vector<Rat> vals(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      vals[v] = f.at_vertex(attach_[v]);
    std::vector<std::vector<Breakpoint>> br(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      if (sub_.edges[e])
        br[e] = f.breakpoints(e);
    return PLFunction(g, std::move(vals), std::move(br));
  }

private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void flood(const MetrizedGraph &g, std::size_t start, std::vector<std::size_t> &comp,
             std::size_t label, bool inside) const {
    std::vector<std::size_t> stack{start};
    comp[start] = label;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t e = 0; e < g.num_edges(); ++e) {
        if (sub_.edges[e] != inside)
          continue;
        const auto &ed = g.edge(e);
        std::size_t w = ed.a == v ? ed.b : (ed.b == v ? ed.a : npos);
        if (w == npos || comp[w] != npos || sub_.vertices[w] != inside)
          continue;
        comp[w] = label;
        stack.push_back(w);
      }
    }
  }

  Subgraph sub_;
  std::vector<std::size_t> attach_;
};

inline GraphPoint retract_point(const MetrizedGraph &g, const Subgraph &sub, const GraphPoint &x) {
  return Retraction(g, sub).retract(g, x);
}

inline PLFunction compose_retraction(const MetrizedGraph &g, const Subgraph &sub,
                                     const PLFunction &f) {
  return Retraction(g, sub).compose(g, f);
}

} // namespace skelpot::metgraph
