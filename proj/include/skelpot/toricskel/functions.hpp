#pragma once

#include "skelpot/toricskel/retraction.hpp"

namespace skelpot::toricskel {

/// x -> <gradient, x> + constant
struct AffinePiece {
  RatVec gradient;
  Rat constant;

  Rat operator()(const RatVec &x) const { return dot(gradient, x) + constant; }
  friend bool operator==(const AffinePiece &, const AffinePiece &) = default;
  friend bool operator<(const AffinePiece &x, const AffinePiece &y) {
    return x.gradient != y.gradient ? x.gradient < y.gradient : x.constant < y.constant;
  }
};

/// Minimum of finitely many affine functions; concave by construction.
struct MinAffine {
  std::vector<AffinePiece> pieces;

  Rat operator()(const RatVec &x) const {
    if (pieces.empty())
      throw std::invalid_argument("minimum over no affine pieces");
    Rat best = pieces.front()(x);
    for (const auto &p : pieces)
      best = std::min(best, p(x));
    return best;
  }

  /// Recession function: x -> min <m, x>.
  Rat slope_at_infinity(const RatVec &x) const {
    Rat best = dot(pieces.front().gradient, x);
    for (const auto &p : pieces)
      best = std::min(best, dot(p.gradient, x));
    return best;
  }

  /// Support function of a lattice polytope: min over its vertices m of <m, x>.
  static MinAffine of_polytope(const std::vector<RatVec> &vertices) {
    MinAffine s;
    for (const auto &m : vertices)
      s.pieces.push_back({m, Rat(0)});
    return s;
  }
};

using SupportFn = MinAffine;

/// min(u, v, 0): support function of the standard simplex.
inline SupportFn standard_simplex_support() {
  return MinAffine::of_polytope({ints({1, 0}), ints({0, 1}), ints({0, 0})});
}

/// Piecewise affine function on a complex: one affine piece per maximal cell,
/// agreeing wherever two cells meet.
class ToricPLFunction {
public:
  ToricPLFunction(PolyComplex cx, std::vector<AffinePiece> pieces)
      : cx_(std::move(cx)), pieces_(std::move(pieces)) {
    if (pieces_.size() != cx_.cells.size())
      throw DimensionMismatch("need one affine piece per cell");
    for (const auto &p : pieces_)
      if (p.gradient.size() != cx_.dim)
        throw DimensionMismatch("affine piece has the wrong dimension");
    for (std::size_t i = 0; i < pieces_.size(); ++i)
      for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
        auto meet = intersect_2d(cx_.cells[i], cx_.cells[j]);
        if (meet && !agree_on(pieces_[i], pieces_[j], *meet))
          throw ComplexError("pieces on " + cx_.label(i) + " and " + cx_.label(j) +
                             " disagree on their common face " + to_string(*meet));
      }
  }

  const PolyComplex &complex() const { return cx_; }
  const std::vector<AffinePiece> &pieces() const { return pieces_; }
  const AffinePiece &piece(std::size_t i) const { return pieces_.at(i); }

  Rat operator()(const RatVec &u) const {
    auto where = containing_cells(cx_, u);
    if (where.empty())
      throw ComplexError("no cell contains " + to_string(u));
    return pieces_[where.front()](u);
  }

  /// Equal values at all points, equal slopes along all rays.
  static bool agree_on(const AffinePiece &a, const AffinePiece &b, const Polyhedron &face) {
    for (const auto &p : face.points)
      if (a(p) != b(p))
        return false;
    for (const auto &r : face.rays)
      if (dot(a.gradient, r) != dot(b.gradient, r))
        return false;
    return true;
  }

private:
  PolyComplex cx_;
  std::vector<AffinePiece> pieces_;
};

/// The affine piece with the given values at the points of `cell` and slope
/// zero along its rays; nullopt if no affine function fits.
inline std::optional<AffinePiece> fit_affine(const Polyhedron &cell, const std::vector<Rat> &values,
                                             const RatVec &ray_slopes = {}) {
  const std::size_t n = cell.ambient_dim();
  RatMatrix rows;
  RatVec rhs;
  for (std::size_t i = 0; i < cell.points.size(); ++i) {
    RatVec r = cell.points[i];
    r.push_back(Rat(1));
    rows.push_back(std::move(r));
    rhs.push_back(values[i]);
  }
  for (std::size_t j = 0; j < cell.rays.size(); ++j) {
    RatVec r = cell.rays[j];
    r.push_back(Rat(0));
    rows.push_back(std::move(r));
    rhs.push_back(ray_slopes.empty() ? Rat(0) : ray_slopes[j]);
  }
  auto sol = solve(rows, rhs);
  if (!sol)
    return std::nullopt;
  AffinePiece a{RatVec(sol->x.begin(), sol->x.begin() + static_cast<std::ptrdiff_t>(n)), sol->x[n]};
  return a;
}

/// Psi + f, cell by cell. Psi must be affine on every cell of f's complex.
inline ToricPLFunction add_support(const SupportFn &psi, const ToricPLFunction &f) {
  const auto &cx = f.complex();
  std::vector<AffinePiece> out;
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    const auto &cell = cx.cells[i];
    std::optional<AffinePiece> found;
    for (const auto &k : psi.pieces) {
      bool ok = true;
      for (const auto &p : cell.points)
        ok = ok && k(p) == psi(p);
      for (const auto &r : cell.rays)
        ok = ok && dot(k.gradient, r) == psi.slope_at_infinity(r);
      if (ok) {
        found = k;
        break;
      }
    }
    if (!found)
      throw ComplexError("support function is not affine on " + cx.label(i));
    const auto &fp = f.piece(i);
    out.push_back({found->gradient + fp.gradient, found->constant + fp.constant});
  }
  return ToricPLFunction(cx, std::move(out));
}

/// g o p, where p is the retraction of `cx` onto its skeleton and g is
/// given on (a complex covering) the skeleton, affine on each of its cells.
inline ToricPLFunction compose_with_retraction(const PolyComplex &cx, const ToricPLFunction &g) {
  std::vector<AffinePiece> out;
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    const auto &cell = cx.cells[i];
    // conv(points) is a bounded face; g must be affine on it.
    std::optional<std::size_t> host;
    for (std::size_t h = 0; h < g.complex().cells.size() && !host; ++h) {
      bool all = std::all_of(cell.points.begin(), cell.points.end(), [&](const RatVec &p) {
        return poly_contains(g.complex().cells[h], p);
      });
      if (all)
        host = h;
    }
    if (!host)
      throw ComplexError("g is not affine on the bounded part of " + cx.label(i));
    std::vector<Rat> vals;
    for (const auto &p : cell.points)
      vals.push_back(g.piece(*host)(p));
    auto piece = fit_affine(cell, vals);
    if (!piece)
      throw ComplexError(cx.label(i) + " is not simplicial; g o p is not affine on it");
    out.push_back(*piece);
  }
  return ToricPLFunction(cx, std::move(out));
}

/// f restricted to the cells of `target`, each of which must lie in a cell of
/// f's complex.
inline ToricPLFunction restrict_to(const ToricPLFunction &f, const PolyComplex &target) {
  std::vector<AffinePiece> out;
  for (std::size_t i = 0; i < target.cells.size(); ++i) {
    const auto &cell = target.cells[i];
    std::optional<std::size_t> host;
    for (std::size_t h = 0; h < f.complex().cells.size() && !host; ++h) {
      const auto &big = f.complex().cells[h];
      bool all = std::all_of(cell.points.begin(), cell.points.end(),
                             [&](const RatVec &p) { return poly_contains(big, p); });
      for (const auto &r : cell.rays)
        all = all && generator_system_feasible({RatVec(big.ambient_dim())}, big.rays, r);
      if (all)
        host = h;
    }
    if (!host)
      throw ComplexError(target.label(i) + " is not inside a single cell of the function's complex");
    out.push_back(f.piece(*host));
  }
  return ToricPLFunction(target, std::move(out));
}

/// Equality as functions on the overlap of two complexes: wherever two
/// maximal cells share a 2-dimensional region, the pieces coincide; lower
/// dimensional overlaps compare values on the common face.
inline bool same_function(const ToricPLFunction &f, const ToricPLFunction &h) {
  const auto &a = f.complex(), &b = h.complex();
  for (std::size_t i = 0; i < a.cells.size(); ++i)
    for (std::size_t j = 0; j < b.cells.size(); ++j) {
      auto meet = intersect_2d(a.cells[i], b.cells[j]);
      if (meet && !ToricPLFunction::agree_on(f.piece(i), h.piece(j), *meet))
        return false;
    }
  return true;
}

/// A point where concavity fails across the common facet of two cells: the
/// piece of `from` extended into `into` lies strictly below the function.
struct ConcavityWitness {
  std::size_t from;
  std::size_t into;
  Polyhedron facet;
  RatVec point;
  Rat gap;  // piece(from)(point) - piece(into)(point), negative
};

struct ConcavityResult {
  bool concave;
  std::optional<ConcavityWitness> witness;
};

/// Facet-local concavity: across every edge shared by two maximal cells, each
/// piece dominates the function on the other cell.
inline ConcavityResult is_concave(const ToricPLFunction &h) {
  const auto &cx = h.complex();
  if (cx.dim != 2)
    throw DimensionMismatch("is_concave supports dimension 2 only");
  for (std::size_t i = 0; i < cx.cells.size(); ++i)
    for (std::size_t j = 0; j < cx.cells.size(); ++j) {
      if (i == j)
        continue;
      auto meet = intersect_2d(cx.cells[i], cx.cells[j]);
      if (!meet || dimension(*meet) != 1)
        continue;
      const auto &a = h.piece(i), &b = h.piece(j);
      const auto &into = cx.cells[j];
      for (const auto &p : into.points) {
        Rat gap = a(p) - b(p);
        if (gap < 0)
          return {false, ConcavityWitness{i, j, *meet, p, gap}};
      }
      for (const auto &r : into.rays) {
        Rat drift = dot(a.gradient - b.gradient, r);
        if (drift >= 0)
          continue;
        const RatVec &base = into.points.front();
        Rat t = (a(base) - b(base)) / -drift + 1;
        RatVec x = base + t * r;
        return {false, ConcavityWitness{i, j, *meet, x, a(x) - b(x)}};
      }
    }
  return {true, std::nullopt};
}

/// Distinct affine pieces of a function; for concave h their minimum is h.
inline MinAffine as_min_affine(const ToricPLFunction &h) {
  MinAffine m{h.pieces()};
  std::sort(m.pieces.begin(), m.pieces.end());
  m.pieces.erase(std::unique(m.pieces.begin(), m.pieces.end()), m.pieces.end());
  return m;
}

} // namespace skelpot::toricskel
