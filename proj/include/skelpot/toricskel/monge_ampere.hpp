#pragma once

#include "skelpot/toricskel/functions.hpp"

namespace skelpot::toricskel {

struct ToricAtom {
  RatVec point;
  Rat mass;
  friend bool operator==(const ToricAtom &, const ToricAtom &) = default;
};

/// Atoms sorted by point, masses positive.
struct ToricAtomicMeasure {
  std::vector<ToricAtom> atoms;

  Rat total_mass() const {
    Rat s = 0;
    for (const auto &a : atoms)
      s += a.mass;
    return s;
  }
  Rat mass_at(const RatVec &x) const {
    for (const auto &a : atoms)
      if (a.point == x)
        return a.mass;
    return 0;
  }
  friend bool operator==(const ToricAtomicMeasure &, const ToricAtomicMeasure &) = default;
};

struct NotConcave : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RecessionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Convex hull of planar points, counter-clockwise, collinear points dropped.
inline std::vector<RatVec> convex_hull_2d(std::vector<RatVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3)
    return pts;
  auto cross = [](const RatVec &o, const RatVec &a, const RatVec &b) {
    return Rat((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]));
  };
  std::vector<RatVec> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0)
      --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

/// Area of the convex hull (shoelace on the hull).
inline Rat hull_area_2d(const std::vector<RatVec> &pts) {
  auto h = convex_hull_2d(pts);
  if (h.size() < 3)
    return 0;
  Rat twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto &p = h[i], &q = h[(i + 1) % h.size()];
    twice += p[0] * q[1] - p[1] * q[0];
  }
  return rat_abs(twice) / 2;
}

/// n!-normalized volume of a lattice polytope given by points (n <= 2).
inline Rat normalized_volume(const std::vector<RatVec> &pts) {
  if (pts.empty())
    return 0;
  const std::size_t n = pts.front().size();
  if (n == 1) {
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    return (*hi)[0] - (*lo)[0];
  }
  if (n == 2)
    return 2 * hull_area_2d(pts);
  throw DimensionMismatch("Monge-Ampere masses are implemented for n <= 2");
}

/// Real Monge-Ampere measure of a concave min of affine pieces whose
/// gradients span the polytope P: an atom at each point where the
/// superdifferential (the hull of the active gradients) is n-dimensional, with
/// mass n! times its volume.
inline ToricAtomicMeasure toric_ma(const MinAffine &h, const std::vector<RatVec> &polytope) {
  if (h.pieces.empty())
    throw std::invalid_argument("empty function");
  const std::size_t n = h.pieces.front().gradient.size();
  if (n != 1 && n != 2)
    throw DimensionMismatch("toric_ma is implemented for n <= 2");
  std::vector<RatVec> grads;
  for (const auto &p : h.pieces)
    grads.push_back(p.gradient);
  if (!same_set(Polyhedron{grads, {}}, make_polyhedron(polytope)))
    throw RecessionMismatch("hull of the gradients " + to_string(canonical(Polyhedron{grads, {}})) +
                            " differs from the polytope");

  std::vector<RatVec> corners;
  const auto &ps = h.pieces;
  auto consider = [&](std::optional<LinearSolution> sol, std::size_t i) {
    if (!sol || !sol->unique)
      return;
    if (ps[i](sol->x) == h(sol->x) &&
        std::find(corners.begin(), corners.end(), sol->x) == corners.end())
      corners.push_back(sol->x);
  };
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (n == 1) {
        consider(solve({ps[i].gradient - ps[j].gradient}, {ps[j].constant - ps[i].constant}), i);
        continue;
      }
      for (std::size_t k = j + 1; k < ps.size(); ++k)
        consider(solve({ps[i].gradient - ps[j].gradient, ps[i].gradient - ps[k].gradient},
                       {ps[j].constant - ps[i].constant, ps[k].constant - ps[i].constant}),
                 i);
    }

  ToricAtomicMeasure mu;
  for (const auto &u : corners) {
    Rat top = h(u);
    std::vector<RatVec> active;
    for (const auto &p : ps)
      if (p(u) == top)
        active.push_back(p.gradient);
    Rat mass = normalized_volume(active);
    if (mass > 0)
      mu.atoms.push_back({u, mass});
  }
  std::sort(mu.atoms.begin(), mu.atoms.end(),
            [](const ToricAtom &a, const ToricAtom &b) { return a.point < b.point; });
  if (mu.total_mass() != normalized_volume(polytope))
    throw std::logic_error("Monge-Ampere mass " + to_string(mu.total_mass()) +
                           " differs from the normalized volume of the polytope");
  return mu;
}

/// Same, for a concave piecewise affine function on a complex.
inline ToricAtomicMeasure toric_ma(const ToricPLFunction &h, const std::vector<RatVec> &polytope) {
  auto verdict = is_concave(h);
  if (!verdict.concave)
    throw NotConcave("function is not concave: the piece on " +
                     h.complex().label(verdict.witness->from) + " drops below it at " +
                     to_string(verdict.witness->point));
  return toric_ma(as_min_affine(h), polytope);
}

} // namespace skelpot::toricskel
