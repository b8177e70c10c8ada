#pragma once

#include "skelpot/metgraph/pl_function.hpp"
#include "skelpot/toricskel/monge_ampere.hpp"

#include <sstream>

namespace skelpot::io {

/// Coordinates are snapped to a raster of 1/100 unit and written as integer
/// pixels (100 px per unit), so identical input gives identical bytes.
constexpr long kPixelsPerUnit = 100;

namespace svg_detail {

inline long snap(const Rat &x) {
  Int v = floor_int(x * kPixelsPerUnit + Rat(1, 2));
  return v.get_si();
}

inline std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    default: out += c;
    }
  }
  return out;
}

/// Maps the box [-b, b]^2 to pixels with the y axis pointing up.
struct Frame {
  Rat half;
  long px(const Rat &x) const { return snap(x + half); }
  long py(const Rat &y) const { return snap(half - y); }
  long size() const { return snap(2 * half); }
};

inline std::string header(long w, long h) {
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\""
    << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  return s.str();
}

} // namespace svg_detail

struct SvgError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Planar complex clipped to [-bbox, bbox]^2: 2-cells filled and labelled,
/// every edge drawn once as a <line>, isolated vertices as dots.
inline std::string render_complex(const toricskel::PolyComplex &cx, const Rat &bbox) {
  using namespace svg_detail;
  if (cx.dim != 2)
    throw SvgError("only planar complexes can be rendered");
  if (bbox <= 0)
    throw SvgError("bounding box must be positive");
  const Frame fr{bbox};
  const Polyhedron box = make_polyhedron(
      {RatVec{-bbox, -bbox}, RatVec{bbox, -bbox}, RatVec{bbox, bbox}, RatVec{-bbox, bbox}});
  std::ostringstream fills, lines, dots, labels;
  std::vector<Polyhedron> drawn_edges, drawn_dots;
  auto draw_edge = [&](const Polyhedron &e) {
    auto clipped = intersect_2d(e, box);
    if (!clipped || clipped->points.size() != 2)
      return;
    if (std::find(drawn_edges.begin(), drawn_edges.end(), *clipped) != drawn_edges.end())
      return;
    drawn_edges.push_back(*clipped);
    const auto &a = clipped->points[0], &b = clipped->points[1];
    lines << "  <line x1=\"" << fr.px(a[0]) << "\" y1=\"" << fr.py(a[1]) << "\" x2=\""
          << fr.px(b[0]) << "\" y2=\"" << fr.py(b[1]) << "\"/>\n";
  };
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    const Polyhedron cell = canonical(cx.cells[i]);
    const std::size_t d = dimension(cell);
    if (d == 0) {
      if (!poly_contains(box, cell.points.front()) ||
          std::find(drawn_dots.begin(), drawn_dots.end(), cell) != drawn_dots.end())
        continue;
      drawn_dots.push_back(cell);
      dots << "  <circle cx=\"" << fr.px(cell.points[0][0]) << "\" cy=\""
           << fr.py(cell.points[0][1]) << "\" r=\"4\"/>\n";
      continue;
    }
    if (d == 1) {
      draw_edge(cell);
      continue;
    }
    auto clipped = intersect_2d(cell, box);
    if (!clipped || dimension(*clipped) < 2)
      continue;
    auto poly = toricskel::convex_hull_2d(clipped->points);
    fills << "  <polygon points=\"";
    Rat cx_sum = 0, cy_sum = 0;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      fills << (k ? " " : "") << fr.px(poly[k][0]) << ',' << fr.py(poly[k][1]);
      cx_sum += poly[k][0];
      cy_sum += poly[k][1];
    }
    fills << "\"/>\n";
    const Rat n = static_cast<long>(poly.size());
    labels << "  <text x=\"" << fr.px(cx_sum / n) << "\" y=\"" << fr.py(cy_sum / n) << "\">"
           << escape(cx.label(i)) << "</text>\n";
    for (const auto &f : proper_faces_2d(cell))
      if (dimension(f) == 1)
        draw_edge(f);
  }
  const long w = fr.size();
  std::ostringstream out;
  out << header(w, w) << "  <g fill=\"#dde6f0\" stroke=\"none\">\n"
      << fills.str() << "  </g>\n  <g stroke=\"#1a1a1a\" stroke-width=\"2\">\n"
      << lines.str() << "  </g>\n  <g fill=\"#1a1a1a\">\n"
      << dots.str() << "  </g>\n"
      << "  <g font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">\n"
      << labels.str() << "  </g>\n</svg>\n";
  return out.str();
}

/// Metrized graph on a square grid (vertex i in column i mod k, row i div k).
/// With a function, edges are coloured by the direction F increases along
/// them and vertices carry "name = value" labels.
inline std::string render_graph(const metgraph::MetrizedGraph &g,
                                const metgraph::PLFunction *f = nullptr) {
  using namespace svg_detail;
  const std::size_t n = g.num_vertices();
  std::size_t k = 1;
  while (k * k < n)
    ++k;
  const long cell = 150, margin = 60;
  auto x_of = [&](std::size_t v) { return margin + cell * static_cast<long>(v % k); };
  auto y_of = [&](std::size_t v) { return margin + cell * static_cast<long>(v / k); };
  std::ostringstream edges, verts;
  std::vector<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto &ed = g.edge(e);
    std::string colour = "#555555";
    if (f) {
      const Rat rise = f->at_vertex(ed.b) - f->at_vertex(ed.a);
      colour = rise > 0 ? "#c0392b" : rise < 0 ? "#2e6fba" : "#555555";
    }
    const long ax = x_of(ed.a), ay = y_of(ed.a), bx = x_of(ed.b), by = y_of(ed.b);
    if (ed.a == ed.b) {
      edges << "  <circle cx=\"" << ax << "\" cy=\"" << ay - 25 << "\" r=\"25\" fill=\"none\" stroke=\""
            << colour << "\"/>\n";
      continue;
    }
    // Parallel edges bow outwards by 20 px per repeat.
    auto key = std::minmax(ed.a, ed.b);
    const long repeat = std::count(seen.begin(), seen.end(), std::pair(key.first, key.second));
    seen.emplace_back(key.first, key.second);
    const long bow = (repeat % 2 ? 1 : -1) * 20 * ((repeat + 1) / 2);
    const long mx = (ax + bx) / 2 - (by - ay != 0 ? bow : 0);
    const long my = (ay + by) / 2 + (bx - ax != 0 ? bow : 0);
    edges << "  <path d=\"M " << ax << ' ' << ay << " Q " << mx << ' ' << my << ' ' << bx << ' '
          << by << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"3\"/>\n";
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::string label = g.name(v);
    if (f)
      label += " = " + to_string(f->at_vertex(v));
    verts << "  <circle cx=\"" << x_of(v) << "\" cy=\"" << y_of(v) << "\" r=\"6\"/>\n"
          << "  <text x=\"" << x_of(v) + 10 << "\" y=\"" << y_of(v) + 22 << "\">" << escape(label)
          << "</text>\n";
  }
  const long w = 2 * margin + cell * static_cast<long>(k - 1);
  const long rows = static_cast<long>((n + k - 1) / k);
  const long h = 2 * margin + cell * (rows - 1);
  std::ostringstream out;
  out << header(w, h) << edges.str() << "  <g fill=\"#1a1a1a\" font-family=\"sans-serif\" font-size=\"14\">\n"
      << verts.str() << "  </g>\n</svg>\n";
  return out.str();
}

} // namespace skelpot::io
