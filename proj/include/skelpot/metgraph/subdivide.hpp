#pragma once

#include "skelpot/metgraph/measure.hpp"

namespace skelpot::metgraph {

/// Result of inserting vertices at interior points of edges. Original
/// vertices keep their ids, the first piece of every edge keeps the edge id,
/// new vertices and further pieces are appended.
class Subdivision {
public:
  Subdivision(const MetrizedGraph &g, const std::vector<GraphPoint> &pts) : old_(&g) {
    cuts_.resize(g.num_edges());
    for (const auto &p : pts) {
      if (p.is_vertex()) {
        if (p.vertex_id() >= g.num_vertices())
          throw GraphError("vertex id out of range");
        continue;
      }
      (void)GraphPoint::on_edge(g, p.edge_id(), p.offset());
      cuts_[p.edge_id()].push_back(p.offset());
    }
    for (auto &c : cuts_) {
      std::sort(c.begin(), c.end());
      c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::vector<std::string> names = g.names();
    std::vector<Edge> edges = g.edges();
    cut_vertex_.resize(g.num_edges());
    piece_edge_.resize(g.num_edges());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const Edge orig = g.edge(e);
      std::vector<std::size_t> chain{orig.a};
      for (const auto &off : cuts_[e]) {
        std::string base = g.name(orig.a) + "~" + g.name(orig.b) + "#" + std::to_string(e) +
                           "@" + to_string(off);
        std::string nm = base;
        for (int k = 1; std::find(names.begin(), names.end(), nm) != names.end(); ++k)
          nm = base + "'" + std::to_string(k);
        cut_vertex_[e].push_back(names.size());
        chain.push_back(names.size());
        names.push_back(nm);
      }
      chain.push_back(orig.b);
      std::vector<Rat> stops{Rat(0)};
      stops.insert(stops.end(), cuts_[e].begin(), cuts_[e].end());
      stops.push_back(orig.length);
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        Edge piece{chain[i], chain[i + 1], stops[i + 1] - stops[i], orig.weight};
        if (i == 0) {
          edges[e] = piece;
          piece_edge_[e].push_back(e);
        } else {
          piece_edge_[e].push_back(edges.size());
          edges.push_back(piece);
        }
      }
    }
    graph_ = MetrizedGraph(std::move(names), std::move(edges));
    origin_of_edge_.assign(graph_.num_edges(), {0, Rat(0)});
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      Rat start = 0;
      for (std::size_t i = 0; i < piece_edge_[e].size(); ++i) {
        origin_of_edge_[piece_edge_[e][i]] = {e, start};
        start += graph_.edge(piece_edge_[e][i]).length;
      }
    }
  }

  const MetrizedGraph &graph() const { return graph_; }
  const MetrizedGraph &original() const { return *old_; }

  /// Old point -> point of the subdivided graph.
  GraphPoint map(const GraphPoint &x) const {
    if (x.is_vertex())
      return x;
    std::size_t e = x.edge_id();
    const auto &c = cuts_[e];
    Rat start = 0;
    for (std::size_t i = 0; i <= c.size(); ++i) {
      Rat stop = i < c.size() ? c[i] : old_->edge(e).length;
      if (x.offset() <= stop)
        return GraphPoint::on_edge(graph_, piece_edge_[e][i], x.offset() - start);
      start = stop;
    }
    throw GraphError("point outside edge");
  }

  /// Point of the subdivided graph -> old point.
  GraphPoint unmap(const GraphPoint &y) const {
    if (y.is_vertex()) {
      if (y.vertex_id() < old_->num_vertices())
        return y;
      for (std::size_t e = 0; e < cut_vertex_.size(); ++e)
        for (std::size_t i = 0; i < cut_vertex_[e].size(); ++i)
          if (cut_vertex_[e][i] == y.vertex_id())
            return GraphPoint::on_edge(*old_, e, cuts_[e][i]);
      throw GraphError("unknown vertex in subdivision");
    }
    auto [e, start] = origin_of_edge_[y.edge_id()];
    return GraphPoint::on_edge(*old_, e, start + y.offset());
  }

  PLFunction push(const PLFunction &f) const {
    f.check(*old_);
    std::vector<Rat> vals(graph_.num_vertices());
    for (std::size_t v = 0; v < graph_.num_vertices(); ++v)
      vals[v] = f(*old_, unmap(GraphPoint::vertex(v)));
    std::vector<std::vector<Breakpoint>> br(graph_.num_edges());
    for (std::size_t e = 0; e < old_->num_edges(); ++e)
      for (const auto &b : f.breakpoints(e)) {
        GraphPoint y = map(GraphPoint::on_edge(*old_, e, b.offset));
        if (!y.is_vertex())
          br[y.edge_id()].push_back({y.offset(), b.value});
      }
    return PLFunction(graph_, std::move(vals), std::move(br));
  }

  PLFunction pull(const PLFunction &h) const {
    h.check(graph_);
    std::vector<Rat> vals(old_->num_vertices());
    for (std::size_t v = 0; v < old_->num_vertices(); ++v)
      vals[v] = h.at_vertex(v);
    std::vector<std::vector<Breakpoint>> br(old_->num_edges());
    for (std::size_t e = 0; e < old_->num_edges(); ++e) {
      Rat start = 0;
      for (std::size_t i = 0; i < piece_edge_[e].size(); ++i) {
        std::size_t pe = piece_edge_[e][i];
        if (i > 0)
          br[e].push_back({start, h.at_vertex(graph_.edge(pe).a)});
        for (const auto &b : h.breakpoints(pe))
          br[e].push_back({start + b.offset, b.value});
        start += graph_.edge(pe).length;
      }
    }
    return PLFunction(*old_, std::move(vals), std::move(br));
  }

  CurvatureData push(const CurvatureData &theta) const {
    theta.check(*old_);
    CurvatureData out{theta.degree};
    out.degree.resize(graph_.num_vertices(), Rat(0));
    return out;
  }

  AtomicMeasure push(const AtomicMeasure &m) const {
    AtomicMeasure out;
    for (const auto &a : m.atoms())
      out.add(map(a.point), a.mass);
    return out;
  }

  AtomicMeasure pull(const AtomicMeasure &m) const {
    AtomicMeasure out;
    for (const auto &a : m.atoms())
      out.add(unmap(a.point), a.mass);
    return out;
  }

private:
  const MetrizedGraph *old_;
  MetrizedGraph graph_;
  std::vector<std::vector<Rat>> cuts_;
  std::vector<std::vector<std::size_t>> cut_vertex_;
  std::vector<std::vector<std::size_t>> piece_edge_;
  std::vector<std::pair<std::size_t, Rat>> origin_of_edge_;
};

/// Inserts vertices at the given points. The Subdivision keeps a pointer to
/// `g`, which must outlive it.
inline Subdivision subdivide(const MetrizedGraph &g, const std::vector<GraphPoint> &pts) {
  return Subdivision(g, pts);
}

} // namespace skelpot::metgraph
