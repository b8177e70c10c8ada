#pragma once

#include "skelpot/toricskel/monge_ampere.hpp"

namespace skelpot::toricskel {

/// Two unimodular models of P^2 with the same skeleton (the unit triangle) and
/// the same function g on it, where g o p is psh for one model and not for
/// the other.
struct Counterexample {
  PolyComplex pi;        // cells labelled T, s1, s2, s3, C, B, A
  PolyComplex pi_prime;  // mirror image of pi in the diagonal u = v
  Fan fan;
  SupportFn psi;         // min(u, v, 0)
  ToricPLFunction g;     // on the skeleton: g(1,0) = 1, g(0,0) = g(0,1) = 0
  ToricPLFunction f;     // g o p for pi
  ToricPLFunction f_prime;
  std::vector<RatVec> polytope;  // standard simplex
};

namespace detail {

inline Polyhedron cell(std::vector<RatVec> pts, std::vector<RatVec> rays = {}) {
  return make_polyhedron(std::move(pts), std::move(rays));
}

/// Cells shared by both models: the triangle and the three cells below it.
inline std::vector<std::pair<std::string, Polyhedron>> common_cells() {
  RatVec o = ints({0, 0}), x = ints({1, 0}), y = ints({0, 1});
  RatVec e0 = ints({-1, -1});
  return {
      {"T", cell({o, x, y})},
      {"C", cell({o, x}, {e0})},
      {"B", cell({o, y}, {e0})},
      {"A", cell({y}, {y, e0})},
  };
}

inline PolyComplex assemble(std::vector<std::pair<std::string, Polyhedron>> named) {
  PolyComplex cx{2, {}, {}};
  for (auto &[name, c] : named) {
    cx.labels.push_back(name);
    cx.cells.push_back(std::move(c));
  }
  return cx;
}

} // namespace detail

inline PolyComplex counterexample_pi() {
  RatVec x = ints({1, 0}), y = ints({0, 1}), e0 = ints({-1, -1});
  auto cells = detail::common_cells();
  cells.insert(cells.begin() + 1, {
                                      {"s1", detail::cell({y, x}, {x})},
                                      {"s2", detail::cell({x}, {x, e0})},
                                      {"s3", detail::cell({y}, {x, y})},
                                  });
  return detail::assemble(std::move(cells));
}

/// Mirror image of a planar complex in the diagonal; labels get a prime.
inline PolyComplex reflect_in_diagonal(const PolyComplex &cx) {
  auto swap = [](RatVec v) {
    std::swap(v[0], v[1]);
    return v;
  };
  PolyComplex out{cx.dim, {}, {}};
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    Polyhedron c;
    for (const auto &p : cx.cells[i].points)
      c.points.push_back(swap(p));
    for (const auto &r : cx.cells[i].rays)
      c.rays.push_back(swap(r));
    out.cells.push_back(std::move(c));
    out.labels.push_back(cx.label(i) + "'");
  }
  return out;
}

inline PolyComplex counterexample_pi_prime() { return reflect_in_diagonal(counterexample_pi()); }

inline ToricPLFunction skeleton_function_g() {
  PolyComplex tri{2, {detail::cell({ints({0, 0}), ints({1, 0}), ints({0, 1})})}, {"T"}};
  return ToricPLFunction(tri, {AffinePiece{ints({1, 0}), Rat(0)}});
}

inline Counterexample counterexample_fixture() {
  PolyComplex pi = counterexample_pi(), pi_prime = counterexample_pi_prime();
  ToricPLFunction g = skeleton_function_g();
  ToricPLFunction f = compose_with_retraction(pi, g);
  ToricPLFunction f_prime = compose_with_retraction(pi_prime, g);
  return Counterexample{std::move(pi),
                        std::move(pi_prime),
                        projective_plane_fan(),
                        standard_simplex_support(),
                        std::move(g),
                        std::move(f),
                        std::move(f_prime),
                        {ints({0, 0}), ints({1, 0}), ints({0, 1})}};
}

/// A unimodular refinement of the mirrored model whose skeleton is the
/// unit square; f' factors through its retraction.
inline PolyComplex refinement_pi_double_prime() {
  RatVec x = ints({1, 0}), y = ints({0, 1}), xy = ints({1, 1}), e0 = ints({-1, -1});
  auto cells = detail::common_cells();
  cells.insert(cells.begin() + 1, {
                                      {"T2", detail::cell({y, x, xy})},
                                      {"U", detail::cell({y, xy}, {y})},
                                      {"R", detail::cell({x, xy}, {x})},
                                      {"Q", detail::cell({xy}, {x, y})},
                                      {"s2", detail::cell({x}, {x, e0})},
                                  });
  return detail::assemble(std::move(cells));
}

} // namespace skelpot::toricskel
