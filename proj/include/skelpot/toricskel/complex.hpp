#pragma once

#include "skelpot/exactla/polyhedron.hpp"

#include <set>
#include <stdexcept>

namespace skelpot::toricskel {

struct ComplexError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Polyhedral complex in R^n given by its maximal cells. Faces are derived.
struct PolyComplex {
  std::size_t dim = 2;
  std::vector<Polyhedron> cells;
  std::vector<std::string> labels;  // optional, parallel to cells

  std::string label(std::size_t i) const {
    if (i < labels.size() && !labels[i].empty())
      return labels[i];
    return "cell " + std::to_string(i);
  }
};

/// Fan given by its maximal cones, each stored as {origin} + cone(rays).
struct Fan {
  std::size_t dim = 2;
  std::vector<Polyhedron> cones;
};

inline Polyhedron make_cone(std::vector<RatVec> rays) {
  if (rays.empty())
    throw std::invalid_argument("cone needs an ambient dimension; pass the zero cone as a point");
  std::size_t n = rays.front().size();
  return make_polyhedron({RatVec(n)}, std::move(rays));
}

inline Fan projective_plane_fan() {
  RatVec e1 = ints({1, 0}), e2 = ints({0, 1}), e0 = ints({-1, -1});
  return Fan{2, {make_cone({e1, e2}), make_cone({e2, e0}), make_cone({e0, e1})}};
}

/// The fan itself, read as a complex with the single vertex at the origin.
inline PolyComplex fan_as_complex(const Fan &f) {
  PolyComplex c{f.dim, f.cones, {}};
  return c;
}

/// Every face of every cell (cells included), canonical and distinct.
inline std::vector<Polyhedron> all_faces(const std::vector<Polyhedron> &cells) {
  std::vector<Polyhedron> out;
  auto push = [&](Polyhedron p) {
    if (std::find(out.begin(), out.end(), p) == out.end())
      out.push_back(std::move(p));
  };
  for (const auto &c : cells) {
    push(canonical(c));
    for (auto &f : proper_faces_2d(c))
      push(std::move(f));
  }
  return out;
}

/// No line inside: the origin is not a convex combination of the rays.
inline bool is_pointed(const Polyhedron &p) {
  std::vector<RatVec> rays;
  for (const auto &r : p.rays)
    if (!is_zero(r))
      rays.push_back(r);
  return rays.empty() || !generator_system_feasible(rays, {}, RatVec(p.ambient_dim()));
}

/// Generators of cone(cell x {1}): primitive lifts of points and rays.
inline std::vector<RatVec> homogenized_generators(const Polyhedron &cell) {
  Polyhedron c = canonical(cell);
  std::vector<RatVec> gens;
  for (auto p : c.points) {
    p.push_back(Rat(1));
    gens.push_back(primitive_direction(p));
  }
  for (auto r : c.rays) {
    r.push_back(Rat(0));
    gens.push_back(primitive_direction(r));
  }
  return gens;
}

inline bool is_simplicial(const Polyhedron &cell) {
  auto gens = homogenized_generators(cell);
  return rank_of(gens) == gens.size();
}

/// Simplicial, and the cone over the cell is generated by part of a lattice basis.
inline bool is_unimodular(const Polyhedron &cell) {
  if (!is_simplicial(cell))
    return false;
  return gcd_of_maximal_minors(homogenized_generators(cell)) == 1;
}

/// Outcome of validate_complex: global verdicts, per-cell flags and
/// human-readable diagnostics naming the offending cells.
struct ComplexReport {
  bool cells_ok = true;
  bool face_compatible = true;
  bool complete = true;
  bool recession_matches = true;
  std::vector<bool> simplicial;
  std::vector<bool> unimodular;
  std::vector<std::string> diagnostics;

  bool valid() const { return cells_ok && face_compatible && complete && recession_matches; }
  bool all_unimodular() const {
    return std::all_of(unimodular.begin(), unimodular.end(), [](bool b) { return b; });
  }
};

namespace detail {

inline std::vector<Polyhedron> fan_faces(const Fan &f) { return all_faces(f.cones); }

} // namespace detail

/// Checks a planar complex: pointed full-dimensional cells, pairwise
/// intersection in common faces, completeness (every edge shared by exactly
/// two cells), and that the recession cones of all faces form the given fan.
inline ComplexReport validate_complex(const PolyComplex &cx, const Fan &sigma) {
  if (cx.dim != 2 || sigma.dim != 2)
    throw DimensionMismatch("validate_complex supports dimension 2 only");
  ComplexReport rep;
  const std::size_t k = cx.cells.size();
  auto fail = [&](bool &flag, std::string msg) {
    flag = false;
    rep.diagnostics.push_back(std::move(msg));
  };
  if (k == 0)
    fail(rep.complete, "complex has no cells");

  std::vector<Polyhedron> canon;
  for (std::size_t i = 0; i < k; ++i) {
    const auto &c = cx.cells[i];
    if (c.points.empty() || c.ambient_dim() != 2) {
      fail(rep.cells_ok, cx.label(i) + ": generators are not planar");
      canon.push_back(c);
      rep.simplicial.push_back(false);
      rep.unimodular.push_back(false);
      continue;
    }
    bool ok = true;
    if (!is_pointed(c)) {
      ok = false;
      fail(rep.cells_ok, cx.label(i) + ": contains a line");
    } else if (dimension(c) != 2) {
      ok = false;
      fail(rep.cells_ok, cx.label(i) + ": maximal cell is not 2-dimensional");
    }
    canon.push_back(ok ? canonical(c) : c);
    rep.simplicial.push_back(ok && is_simplicial(c));
    rep.unimodular.push_back(ok && is_unimodular(c));
  }
  if (!rep.cells_ok)
    return rep;

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      auto meet = intersect_2d(canon[i], canon[j]);
      if (!meet)
        continue;
      if (dimension(*meet) == 2) {
        fail(rep.face_compatible, cx.label(i) + " and " + cx.label(j) + " overlap in " +
                                      to_string(*meet));
      } else if (!is_face_2d(*meet, canon[i]) || !is_face_2d(*meet, canon[j])) {
        fail(rep.face_compatible, cx.label(i) + " and " + cx.label(j) + " meet in " +
                                      to_string(*meet) + ", which is not a face of both");
      }
    }

  // Completeness: every edge face lies in exactly two maximal cells.
  std::vector<std::pair<Polyhedron, std::vector<std::size_t>>> edges;
  for (std::size_t i = 0; i < k; ++i)
    for (auto &f : proper_faces_2d(canon[i])) {
      if (dimension(f) != 1)
        continue;
      auto it = std::find_if(edges.begin(), edges.end(),
                             [&](const auto &e) { return e.first == f; });
      if (it == edges.end())
        edges.push_back({std::move(f), {i}});
      else
        it->second.push_back(i);
    }
  for (const auto &[face, owners] : edges)
    if (owners.size() != 2) {
      std::string who;
      for (auto o : owners)
        who += (who.empty() ? "" : ", ") + cx.label(o);
      fail(rep.complete, "edge " + to_string(face) + " belongs to " +
                             std::to_string(owners.size()) + " cell(s) (" + who +
                             "); the complex is not complete");
    }

  // rec(complex) against the fan, both closed under faces.
  std::vector<Polyhedron> rec;
  for (const auto &f : all_faces(canon)) {
    Polyhedron r = canonical(recession(f));
    if (std::find(rec.begin(), rec.end(), r) == rec.end())
      rec.push_back(std::move(r));
  }
  auto fan = detail::fan_faces(sigma);
  for (const auto &r : rec)
    if (std::find(fan.begin(), fan.end(), r) == fan.end())
      fail(rep.recession_matches, "recession cone " + to_string(r) + " is not a cone of the fan");
  for (const auto &c : fan)
    if (std::find(rec.begin(), rec.end(), c) == rec.end())
      fail(rep.recession_matches, "fan cone " + to_string(c) + " is not a recession cone");
  return rep;
}

inline void require_valid(const ComplexReport &rep) {
  if (rep.valid())
    return;
  std::string msg = "invalid complex:";
  for (const auto &d : rep.diagnostics)
    msg += "\n  " + d;
  throw ComplexError(msg);
}

/// The combinatorial skeleton: maximal bounded faces of the complex.
inline PolyComplex skeleton(const PolyComplex &cx) {
  std::vector<Polyhedron> bounded;
  for (auto &f : all_faces(cx.cells))
    if (f.is_bounded())
      bounded.push_back(std::move(f));
  PolyComplex out{cx.dim, {}, {}};
  for (std::size_t i = 0; i < bounded.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < bounded.size() && maximal; ++j)
      if (i != j && dimension(bounded[j]) > dimension(bounded[i]) &&
          is_face_2d(bounded[i], bounded[j]))
        maximal = false;
    if (maximal)
      out.cells.push_back(bounded[i]);
  }
  return out;
}

/// Maximal cells of `cx` containing u.
inline std::vector<std::size_t> containing_cells(const PolyComplex &cx, const RatVec &u) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cx.cells.size(); ++i)
    if (poly_contains(cx.cells[i], u))
      out.push_back(i);
  return out;
}

} // namespace skelpot::toricskel
