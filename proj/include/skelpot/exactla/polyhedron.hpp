#pragma once

#include "skelpot/exactla/linalg.hpp"
#include "skelpot/exactla/lp.hpp"
#include "skelpot/exactla/rational.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace skelpot {

/// conv(points) + cone(rays), stored by generators only.
struct Polyhedron {
  std::vector<RatVec> points;
  std::vector<RatVec> rays;

  std::size_t ambient_dim() const { return points.front().size(); }
  bool is_bounded() const {
    return std::all_of(rays.begin(), rays.end(), [](const RatVec &r) { return is_zero(r); });
  }

  friend bool operator==(const Polyhedron &, const Polyhedron &) = default;
};

inline Polyhedron make_polyhedron(std::vector<RatVec> points, std::vector<RatVec> rays = {}) {
  if (points.empty())
    throw std::invalid_argument("polyhedron needs at least one point");
  std::size_t d = points.front().size();
  for (const auto &p : points)
    if (p.size() != d)
      throw DimensionMismatch("polyhedron generators have mixed dimensions");
  for (const auto &r : rays)
    if (r.size() != d)
      throw DimensionMismatch("polyhedron generators have mixed dimensions");
  return Polyhedron{std::move(points), std::move(rays)};
}

inline std::string to_string(const Polyhedron &p) {
  std::string s = "conv{";
  for (std::size_t i = 0; i < p.points.size(); ++i)
    s += (i ? "," : "") + to_string(p.points[i]);
  s += "}";
  if (!p.rays.empty()) {
    s += "+cone{";
    for (std::size_t i = 0; i < p.rays.size(); ++i)
      s += (i ? "," : "") + to_string(p.rays[i]);
    s += "}";
  }
  return s;
}

/// Feasibility of u = sum a_i p_i + sum l_j v_j with a, l >= 0 and sum a = 1.
inline bool generator_system_feasible(const std::vector<RatVec> &points,
                                      const std::vector<RatVec> &rays, const RatVec &u) {
  if (points.empty())
    return false;
  const std::size_t d = u.size();
  LinearProgram lp;
  lp.num_vars = points.size() + rays.size();
  lp.objective.assign(lp.num_vars, Rat(0));
  lp.nonneg.assign(lp.num_vars, true);
  for (std::size_t k = 0; k < d; ++k) {
    RatVec row(lp.num_vars);
    for (std::size_t i = 0; i < points.size(); ++i)
      row[i] = points[i][k];
    for (std::size_t j = 0; j < rays.size(); ++j)
      row[points.size() + j] = rays[j][k];
    lp.add(std::move(row), Relation::Equal, u[k]);
  }
  RatVec ones(lp.num_vars);
  for (std::size_t i = 0; i < points.size(); ++i)
    ones[i] = 1;
  lp.add(std::move(ones), Relation::Equal, Rat(1));
  return lp_solve(lp).status == LpStatus::Optimal;
}

inline bool poly_contains(const Polyhedron &p, const RatVec &u) {
  if (u.size() != p.ambient_dim())
    throw DimensionMismatch("point dimension " + std::to_string(u.size()) +
                            " does not match polyhedron dimension " +
                            std::to_string(p.ambient_dim()));
  return generator_system_feasible(p.points, p.rays, u);
}

/// The recession cone, as a polyhedron with its single point at the origin.
inline Polyhedron recession(const Polyhedron &p) {
  Polyhedron r;
  r.points.push_back(RatVec(p.ambient_dim()));
  for (const auto &v : p.rays)
    if (!is_zero(v))
      r.rays.push_back(v);
  return r;
}

/// Dimension of the affine hull.
inline std::size_t dimension(const Polyhedron &p) {
  std::vector<RatVec> dirs;
  for (std::size_t i = 1; i < p.points.size(); ++i)
    dirs.push_back(p.points[i] - p.points[0]);
  for (const auto &r : p.rays)
    dirs.push_back(r);
  return rank_of(dirs);
}

/// Minimal generators: extreme points, primitive extreme rays, both sorted.
/// Assumes the polyhedron is pointed (no lines).
inline Polyhedron canonical(const Polyhedron &p) {
  std::vector<RatVec> rays;
  for (const auto &r : p.rays)
    if (!is_zero(r))
      rays.push_back(primitive_direction(r));
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  for (std::size_t j = 0; j < rays.size();) {
    std::vector<RatVec> others;
    for (std::size_t k = 0; k < rays.size(); ++k)
      if (k != j)
        others.push_back(rays[k]);
    std::vector<RatVec> origin{RatVec(p.ambient_dim())};
    if (!others.empty() && generator_system_feasible(origin, others, rays[j]))
      rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(j));
    else
      ++j;
  }
  std::vector<RatVec> pts = p.points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (std::size_t i = 0; i < pts.size();) {
    std::vector<RatVec> others;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k != i)
        others.push_back(pts[k]);
    if (generator_system_feasible(others, rays, pts[i]))
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return Polyhedron{std::move(pts), std::move(rays)};
}

/// Set equality (compares canonical generators).
inline bool same_set(const Polyhedron &a, const Polyhedron &b) {
  return canonical(a) == canonical(b);
}

// ---------------------------------------------------------------------------
// Planar H-representations. Facets come from pairing generators: a line
// through two points, or through a point along a ray, is a facet line iff all
// generators lie weakly on one side.

/// normal . x <= offset
struct HalfSpace {
  RatVec normal;
  Rat offset;
  friend bool operator==(const HalfSpace &, const HalfSpace &) = default;
  friend bool operator<(const HalfSpace &x, const HalfSpace &y) {
    return x.normal != y.normal ? x.normal < y.normal : x.offset < y.offset;
  }
};

inline bool satisfies(const HalfSpace &h, const RatVec &x) { return dot(h.normal, x) <= h.offset; }

inline HalfSpace normalized(HalfSpace h) {
  Rat scale;
  for (const auto &x : h.normal)
    if (x != 0) {
      scale = rat_abs(x);
      break;
    }
  if (scale == 0)
    return h;
  for (auto &x : h.normal)
    x /= scale;
  h.offset /= scale;
  return h;
}

inline RatVec perp(const RatVec &d) { return RatVec{-d[1], d[0]}; }

inline void require_planar(const Polyhedron &p) {
  if (p.ambient_dim() != 2)
    throw DimensionMismatch("planar routine called on a polyhedron of ambient dimension " +
                            std::to_string(p.ambient_dim()));
}

/// Inequalities describing p (equalities appear as opposite pairs).
inline std::vector<HalfSpace> h_representation_2d(const Polyhedron &poly) {
  require_planar(poly);
  Polyhedron p = canonical(poly);
  std::vector<HalfSpace> out;
  auto push = [&](HalfSpace h) {
    h = normalized(std::move(h));
    if (std::find(out.begin(), out.end(), h) == out.end())
      out.push_back(std::move(h));
  };
  const std::size_t dim = dimension(p);
  if (dim == 0) {
    push({ints({1, 0}), p.points[0][0]});
    push({ints({-1, 0}), -p.points[0][0]});
    push({ints({0, 1}), p.points[0][1]});
    push({ints({0, -1}), -p.points[0][1]});
    return out;
  }
  if (dim == 1) {
    RatVec d = p.points.size() > 1 ? p.points[1] - p.points[0] : p.rays.front();
    RatVec n = perp(d);
    Rat c = dot(n, p.points[0]);
    push({n, c});
    push({Rat(-1) * n, -c});
    bool up = false, down = false;
    for (const auto &r : p.rays) {
      up = up || dot(d, r) > 0;
      down = down || dot(d, r) < 0;
    }
    Rat lo = dot(d, p.points[0]), hi = lo;
    for (const auto &q : p.points) {
      lo = std::min(lo, dot(d, q));
      hi = std::max(hi, dot(d, q));
    }
    if (!up)
      push({d, hi});
    if (!down)
      push({Rat(-1) * d, -lo});
    return out;
  }
  auto try_line = [&](const RatVec &base, const RatVec &dir) {
    RatVec n = perp(dir);
    Rat c = dot(n, base);
    bool le = true, ge = true;
    for (const auto &q : p.points) {
      Rat s = dot(n, q) - c;
      le = le && s <= 0;
      ge = ge && s >= 0;
    }
    for (const auto &r : p.rays) {
      Rat s = dot(n, r);
      le = le && s <= 0;
      ge = ge && s >= 0;
    }
    if (le)
      push({n, c});
    else if (ge)
      push({Rat(-1) * n, -c});
  };
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    for (std::size_t j = i + 1; j < p.points.size(); ++j)
      try_line(p.points[i], p.points[j] - p.points[i]);
    for (const auto &r : p.rays)
      try_line(p.points[i], r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Vertices and rays of {x : h.normal . x <= h.offset for all h}; nullopt if
/// empty. Throws if the set is nonempty but contains a line.
inline std::optional<Polyhedron> v_representation_2d(const std::vector<HalfSpace> &hs) {
  std::vector<RatVec> verts;
  for (std::size_t i = 0; i < hs.size(); ++i)
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      auto sol = solve({hs[i].normal, hs[j].normal}, {hs[i].offset, hs[j].offset});
      if (!sol || !sol->unique)
        continue;
      bool ok = std::all_of(hs.begin(), hs.end(),
                            [&](const HalfSpace &h) { return satisfies(h, sol->x); });
      if (ok)
        verts.push_back(sol->x);
    }
  if (verts.empty()) {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = RatVec(2);
    for (const auto &h : hs)
      lp.add(h.normal, Relation::LessEq, h.offset);
    if (lp_solve(lp).status == LpStatus::Infeasible)
      return std::nullopt;
    throw std::domain_error("planar H-representation describes a set containing a line");
  }
  std::vector<RatVec> rays;
  for (const auto &h : hs)
    for (int s : {1, -1}) {
      RatVec d = Rat(s) * perp(h.normal);
      bool ok = std::all_of(hs.begin(), hs.end(),
                            [&](const HalfSpace &g) { return dot(g.normal, d) <= 0; });
      if (ok && !is_zero(d))
        rays.push_back(d);
    }
  return canonical(Polyhedron{std::move(verts), std::move(rays)});
}

inline std::optional<Polyhedron> intersect_2d(const Polyhedron &a, const Polyhedron &b) {
  auto ha = h_representation_2d(a);
  auto hb = h_representation_2d(b);
  ha.insert(ha.end(), hb.begin(), hb.end());
  return v_representation_2d(ha);
}

/// All nonempty proper faces of a planar polyhedron (vertices and edges),
/// each in canonical form.
inline std::vector<Polyhedron> proper_faces_2d(const Polyhedron &poly) {
  Polyhedron p = canonical(poly);
  std::vector<Polyhedron> faces;
  const std::size_t dim = dimension(p);
  if (dim == 0)
    return faces;
  for (const auto &v : p.points)
    faces.push_back(Polyhedron{{v}, {}});
  if (dim == 2) {
    for (const auto &h : h_representation_2d(p)) {
      Polyhedron f;
      for (const auto &q : p.points)
        if (dot(h.normal, q) == h.offset)
          f.points.push_back(q);
      for (const auto &r : p.rays)
        if (dot(h.normal, r) == 0)
          f.rays.push_back(r);
      faces.push_back(canonical(f));
    }
  }
  return faces;
}

/// True iff f is a face of p (including p itself).
inline bool is_face_2d(const Polyhedron &f, const Polyhedron &p) {
  Polyhedron cf = canonical(f);
  Polyhedron cp = canonical(p);
  if (cf == cp)
    return true;
  for (const auto &g : proper_faces_2d(cp))
    if (g == cf)
      return true;
  return false;
}

} // namespace skelpot
