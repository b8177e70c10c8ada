#pragma once

#include "skelpot/toricskel/complex.hpp"

namespace skelpot::toricskel {

/// Barycentric part a (one weight per point) and recession part lambda (one
/// per ray) of u = sum a_i p_i + sum lambda_j v_j, in the cell's own
/// generator order.
struct Decomposition {
  RatVec a;
  RatVec lambda;
};

/// Exact decomposition of u in a simplicial cell. Zero rays are ignored and
/// get coefficient zero.
inline Decomposition decompose(const Polyhedron &cell, const RatVec &u) {
  if (u.size() != cell.ambient_dim())
    throw DimensionMismatch("point and cell have different dimensions");
  const std::size_t s = cell.points.size(), t = cell.rays.size();
  std::vector<RatVec> cols;
  std::vector<std::size_t> ray_col(t, static_cast<std::size_t>(-1));
  for (const auto &p : cell.points) {
    RatVec c = p;
    c.push_back(Rat(1));
    cols.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < t; ++j) {
    if (is_zero(cell.rays[j]))
      continue;
    RatVec c = cell.rays[j];
    c.push_back(Rat(0));
    ray_col[j] = cols.size();
    cols.push_back(std::move(c));
  }
  if (rank_of(cols) != cols.size())
    throw ComplexError("cell " + to_string(cell) + " is not simplicial");
  RatMatrix m = transpose(cols);
  RatVec rhs = u;
  rhs.push_back(Rat(1));
  auto sol = solve(m, rhs);
  if (!sol)
    throw ComplexError("point " + to_string(u) + " is not in the affine span of " + to_string(cell));
  Decomposition d{RatVec(s), RatVec(t)};
  for (std::size_t i = 0; i < s; ++i)
    d.a[i] = sol->x[i];
  for (std::size_t j = 0; j < t; ++j)
    if (ray_col[j] != static_cast<std::size_t>(-1))
      d.lambda[j] = sol->x[ray_col[j]];
  bool inside = std::all_of(d.a.begin(), d.a.end(), [](const Rat &x) { return x >= 0; }) &&
                std::all_of(d.lambda.begin(), d.lambda.end(), [](const Rat &x) { return x >= 0; });
  if (!inside)
    throw ComplexError("point " + to_string(u) + " is not in " + to_string(cell));
  return d;
}

inline RatVec recompose(const Polyhedron &cell, const Decomposition &d) {
  RatVec u(cell.ambient_dim());
  for (std::size_t i = 0; i < cell.points.size(); ++i)
    u = u + d.a[i] * cell.points[i];
  for (std::size_t j = 0; j < cell.rays.size(); ++j)
    u = u + d.lambda[j] * cell.rays[j];
  return u;
}

/// Combinatorial retraction onto the skeleton: drop the recession part of the
/// decomposition in a containing cell. Every containing cell must agree.
inline RatVec retraction(const PolyComplex &cx, const RatVec &u) {
  std::optional<RatVec> image;
  for (auto i : containing_cells(cx, u)) {
    const auto &cell = cx.cells[i];
    Decomposition d = decompose(cell, u);
    RatVec p(u.size());
    for (std::size_t k = 0; k < cell.points.size(); ++k)
      p = p + d.a[k] * cell.points[k];
    if (image && *image != p)
      throw std::logic_error("retraction of " + to_string(u) + " depends on the cell: " +
                             to_string(*image) + " vs " + to_string(p) + " in " + cx.label(i));
    image = std::move(p);
  }
  if (!image)
    throw ComplexError("no cell contains " + to_string(u) + "; the complex is not complete");
  return *image;
}

} // namespace skelpot::toricskel
