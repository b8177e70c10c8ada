#pragma once

#include "skelpot/curvepot/potential.hpp"
#include "skelpot/testideals/asymptotic.hpp"
#include "skelpot/toricskel/fixtures.hpp"

#include <json.hpp>

namespace skelpot::io {

using json = nlohmann::ordered_json;
using namespace skelpot::metgraph;
using skelpot::testideals::MonomialIdeal;
using skelpot::toricskel::AffinePiece;
using skelpot::toricskel::PolyComplex;

/// Input does not match the expected shape.
struct SchemaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const json &field(const json &j, const char *key, const std::string &where) {
  if (!j.is_object())
    throw SchemaError(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end())
    throw SchemaError(where + " is missing \"" + key + "\"");
  return *it;
}

inline const json &array_field(const json &j, const char *key, const std::string &where) {
  const json &a = field(j, key, where);
  if (!a.is_array())
    throw SchemaError(where + "." + key + " must be an array");
  return a;
}

inline std::int64_t integer(const json &j, const std::string &where) {
  if (!j.is_number_integer())
    throw SchemaError(where + " must be an integer");
  return j.get<std::int64_t>();
}

inline std::string text(const json &j, const std::string &where) {
  if (!j.is_string())
    throw SchemaError(where + " must be a string");
  return j.get<std::string>();
}

/// Rationals travel as "p/q" strings; plain integers are tolerated on input,
/// floats never.
inline Rat rat_from_json(const json &j, const std::string &where) {
  if (j.is_string())
    return parse_rat(j.get<std::string>());
  if (j.is_number_integer())
    return Rat(Int(std::to_string(j.get<std::int64_t>())));
  if (j.is_number_float())
    throw SchemaError(where + " is a floating point number; write it as a \"p/q\" string");
  throw SchemaError(where + " must be a rational string \"p/q\"");
}

inline json rat_to_json(const Rat &r) { return to_string(r); }

inline RatVec vec_from_json(const json &j, const std::string &where) {
  if (!j.is_array())
    throw SchemaError(where + " must be an array of rationals");
  RatVec v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rat_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

inline json vec_to_json(const RatVec &v) {
  json a = json::array();
  for (const auto &x : v)
    a.push_back(rat_to_json(x));
  return a;
}

/// Throws unless no floating point value occurs anywhere in j.
inline void require_no_floats(const json &j, const std::string &where = "$") {
  if (j.is_number_float())
    throw SchemaError("floating point value at " + where);
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i)
      require_no_floats(j[i], where + "[" + std::to_string(i) + "]");
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it)
      require_no_floats(it.value(), where + "." + it.key());
}

// ---- metrized graphs -------------------------------------------------------

struct GraphWithTheta {
  MetrizedGraph graph;
  CurvatureData theta;
};

/// {"vertices":[..], "edges":[{"a","b","len","w"}], "theta":{vertex:"p/q"}};
/// missing theta entries are zero, missing weights are 1.
inline GraphWithTheta graph_from_json(const json &j) {
  const std::string where = "graph";
  std::vector<std::string> names;
  const json &vs = array_field(j, "vertices", where);
  for (std::size_t i = 0; i < vs.size(); ++i)
    names.push_back(text(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
  auto index_of = [&](const json &name, const std::string &at) {
    std::string s = text(name, at);
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s)
        return i;
    throw SchemaError(at + " names unknown vertex \"" + s + "\"");
  };
  std::vector<Edge> edges;
  const json &es = array_field(j, "edges", where);
  for (std::size_t e = 0; e < es.size(); ++e) {
    const std::string at = where + ".edges[" + std::to_string(e) + "]";
    Edge ed;
    ed.a = index_of(field(es[e], "a", at), at + ".a");
    ed.b = index_of(field(es[e], "b", at), at + ".b");
    ed.length = rat_from_json(field(es[e], "len", at), at + ".len");
    ed.weight = es[e].contains("w") ? integer(es[e]["w"], at + ".w") : 1;
    edges.push_back(std::move(ed));
  }
  GraphWithTheta out{MetrizedGraph(names, std::move(edges)), {}};
  out.theta.degree.assign(names.size(), Rat(0));
  if (j.contains("theta")) {
    const json &t = j["theta"];
    if (!t.is_object())
      throw SchemaError("graph.theta must map vertex names to rationals");
    for (auto it = t.begin(); it != t.end(); ++it)
      out.theta.degree[index_of(it.key(), "graph.theta")] =
          rat_from_json(it.value(), "graph.theta." + it.key());
  }
  return out;
}

inline json graph_to_json(const MetrizedGraph &g, const CurvatureData &theta) {
  json j;
  j["vertices"] = g.names();
  j["edges"] = json::array();
  for (const auto &e : g.edges())
    j["edges"].push_back(
        {{"a", g.name(e.a)}, {"b", g.name(e.b)}, {"len", rat_to_json(e.length)}, {"w", e.weight}});
  j["theta"] = json::object();
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    j["theta"][g.name(v)] = rat_to_json(theta.degree[v]);
  return j;
}

/// A vertex name, or {"edge": i, "offset": "p/q"}.
inline GraphPoint point_from_json(const MetrizedGraph &g, const json &j, const std::string &where) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (g.name(v) == name)
        return GraphPoint::vertex(v);
    throw SchemaError(where + " names unknown vertex \"" + name + "\"");
  }
  auto e = integer(field(j, "edge", where), where + ".edge");
  if (e < 0 || static_cast<std::size_t>(e) >= g.num_edges())
    throw SchemaError(where + ".edge is out of range");
  return GraphPoint::on_edge(g, static_cast<std::size_t>(e),
                             rat_from_json(field(j, "offset", where), where + ".offset"));
}

inline json point_to_json(const MetrizedGraph &g, const GraphPoint &x) {
  if (x.is_vertex())
    return g.name(x.vertex_id());
  return {{"edge", x.edge_id()}, {"offset", rat_to_json(x.offset())}};
}

/// {"vertex_values":{name:"p/q"}, "breakpoints":[{"edge","offset","value"}]}
inline PLFunction pl_from_json(const MetrizedGraph &g, const json &j, const std::string &where) {
  const json &vals = field(j, "vertex_values", where);
  if (!vals.is_object())
    throw SchemaError(where + ".vertex_values must map vertex names to rationals");
  std::vector<Rat> values(g.num_vertices());
  std::vector<bool> seen(g.num_vertices(), false);
  for (auto it = vals.begin(); it != vals.end(); ++it) {
    GraphPoint v = point_from_json(g, it.key(), where + ".vertex_values");
    values[v.vertex_id()] = rat_from_json(it.value(), where + ".vertex_values." + it.key());
    seen[v.vertex_id()] = true;
  }
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v])
      throw SchemaError(where + ".vertex_values has no value for \"" + g.name(v) + "\"");
  std::vector<std::vector<Breakpoint>> breaks(g.num_edges());
  if (j.contains("breakpoints")) {
    const json &bs = array_field(j, "breakpoints", where);
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const std::string at = where + ".breakpoints[" + std::to_string(i) + "]";
      auto e = integer(field(bs[i], "edge", at), at + ".edge");
      if (e < 0 || static_cast<std::size_t>(e) >= g.num_edges())
        throw SchemaError(at + ".edge is out of range");
      breaks[static_cast<std::size_t>(e)].push_back(
          {rat_from_json(field(bs[i], "offset", at), at + ".offset"),
           rat_from_json(field(bs[i], "value", at), at + ".value")});
    }
    for (auto &b : breaks)
      std::sort(b.begin(), b.end(),
                [](const Breakpoint &x, const Breakpoint &y) { return x.offset < y.offset; });
  }
  return PLFunction(g, std::move(values), std::move(breaks));
}

inline json pl_to_json(const MetrizedGraph &g, const PLFunction &f) {
  json j;
  j["vertex_values"] = json::object();
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    j["vertex_values"][g.name(v)] = rat_to_json(f.at_vertex(v));
  j["breakpoints"] = json::array();
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    for (const auto &b : f.breakpoints(e))
      j["breakpoints"].push_back(
          {{"edge", e}, {"offset", rat_to_json(b.offset)}, {"value", rat_to_json(b.value)}});
  return j;
}

/// {"atoms":[{"point": .., "mass": "p/q"}]}
inline AtomicMeasure measure_from_json(const MetrizedGraph &g, const json &j,
                                       const std::string &where) {
  AtomicMeasure m;
  const json &as = array_field(j, "atoms", where);
  for (std::size_t i = 0; i < as.size(); ++i) {
    const std::string at = where + ".atoms[" + std::to_string(i) + "]";
    m.add(point_from_json(g, field(as[i], "point", at), at + ".point"),
          rat_from_json(field(as[i], "mass", at), at + ".mass"));
  }
  return m;
}

inline json measure_to_json(const MetrizedGraph &g, const AtomicMeasure &m) {
  json j;
  j["atoms"] = json::array();
  for (const auto &a : m.atoms())
    j["atoms"].push_back({{"point", point_to_json(g, a.point)}, {"mass", rat_to_json(a.mass)}});
  j["total_mass"] = rat_to_json(m.total_mass());
  return j;
}

inline json slope_report_to_json(const MetrizedGraph &g, const curvepot::SlopeReport &rep) {
  json a = json::array();
  for (const auto &p : rep.points)
    a.push_back({{"point", point_to_json(g, p.point)},
                 {"degree", rat_to_json(p.degree)},
                 {"excess", rat_to_json(p.excess)}});
  return a;
}

// ---- polyhedral complexes ---------------------------------------------------

inline Polyhedron polyhedron_from_json(const json &j, const std::string &where) {
  std::vector<RatVec> pts, rays;
  const json &ps = array_field(j, "points", where);
  for (std::size_t i = 0; i < ps.size(); ++i)
    pts.push_back(vec_from_json(ps[i], where + ".points[" + std::to_string(i) + "]"));
  if (j.contains("rays")) {
    const json &rs = array_field(j, "rays", where);
    for (std::size_t i = 0; i < rs.size(); ++i)
      rays.push_back(vec_from_json(rs[i], where + ".rays[" + std::to_string(i) + "]"));
  }
  if (pts.empty())
    throw SchemaError(where + " needs at least one point");
  return make_polyhedron(std::move(pts), std::move(rays));
}

inline json polyhedron_to_json(const Polyhedron &p) {
  json j;
  j["points"] = json::array();
  for (const auto &x : p.points)
    j["points"].push_back(vec_to_json(x));
  j["rays"] = json::array();
  for (const auto &r : p.rays)
    j["rays"].push_back(vec_to_json(r));
  return j;
}

/// {"dim":2, "cells":[{"points":[[..]], "rays":[[..]], "label":..}]}
inline PolyComplex complex_from_json(const json &j) {
  PolyComplex cx;
  auto dim = integer(field(j, "dim", "complex"), "complex.dim");
  if (dim != 2)
    throw SchemaError("complex.dim must be 2");
  cx.dim = 2;
  const json &cs = array_field(j, "cells", "complex");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string at = "complex.cells[" + std::to_string(i) + "]";
    Polyhedron c = polyhedron_from_json(cs[i], at);
    if (c.ambient_dim() != 2)
      throw SchemaError(at + " does not live in the plane");
    cx.cells.push_back(std::move(c));
    cx.labels.push_back(cs[i].contains("label") ? text(cs[i]["label"], at + ".label")
                                                : "c" + std::to_string(i));
  }
  return cx;
}

inline json complex_to_json(const PolyComplex &cx) {
  json j;
  j["dim"] = cx.dim;
  j["cells"] = json::array();
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    json c = polyhedron_to_json(cx.cells[i]);
    c["label"] = cx.label(i);
    j["cells"].push_back(std::move(c));
  }
  return j;
}

inline AffinePiece piece_from_json(const json &j, const std::string &where) {
  return {vec_from_json(field(j, "gradient", where), where + ".gradient"),
          rat_from_json(field(j, "constant", where), where + ".constant")};
}

inline json piece_to_json(const AffinePiece &a) {
  return {{"gradient", vec_to_json(a.gradient)}, {"constant", rat_to_json(a.constant)}};
}

inline std::vector<AffinePiece> pieces_from_json(const json &j, const std::string &where) {
  if (!j.is_array())
    throw SchemaError(where + " must be an array of affine pieces");
  std::vector<AffinePiece> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(piece_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline json pieces_to_json(const std::vector<AffinePiece> &ps) {
  json a = json::array();
  for (const auto &p : ps)
    a.push_back(piece_to_json(p));
  return a;
}

// ---- monomial ideals ---------------------------------------------------------

/// {"n":2, "gens":[[3,2],[0,5]]}; "p" is read separately by the caller.
inline MonomialIdeal ideal_from_json(const json &j, const std::string &where) {
  auto n = integer(field(j, "n", where), where + ".n");
  if (n < 1)
    throw SchemaError(where + ".n must be positive");
  std::vector<testideals::Exponent> gens;
  const json &gs = array_field(j, "gens", where);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const std::string at = where + ".gens[" + std::to_string(i) + "]";
    if (!gs[i].is_array())
      throw SchemaError(at + " must be an array of exponents");
    testideals::Exponent g;
    for (std::size_t k = 0; k < gs[i].size(); ++k)
      g.push_back(integer(gs[i][k], at + "[" + std::to_string(k) + "]"));
    gens.push_back(std::move(g));
  }
  return MonomialIdeal(static_cast<std::size_t>(n), std::move(gens));
}

inline json ideal_to_json(const MonomialIdeal &a) {
  return {{"n", a.num_vars()}, {"gens", a.generators()}, {"text", testideals::to_string(a)}};
}

} // namespace skelpot::io
