#include "skelpot/curvepot/potential.hpp"

#include <catch_amalgamated.hpp>

using namespace skelpot;
using namespace skelpot::metgraph;
using namespace skelpot::curvepot;

namespace {

MetrizedGraph unit_edge() { return MetrizedGraph({"v1", "v2"}, {{0, 1, Rat(1), 1}}); }
CurvatureData ones(std::size_t n) { return {std::vector<Rat>(n, Rat(1))}; }
PLFunction affine(const MetrizedGraph &g, long a, long b) { return PLFunction(g, {Rat(a), Rat(b)}); }

AtomicMeasure atoms(std::initializer_list<std::pair<GraphPoint, Rat>> xs) {
  AtomicMeasure m;
  for (const auto &[p, w] : xs)
    m.add(p, w);
  return m;
}

const GraphPoint v1 = GraphPoint::vertex(0), v2 = GraphPoint::vertex(1);

} // namespace

TEST_CASE("slope test on a unit edge") {
  auto g = unit_edge();
  auto [ok0, rep0] = is_theta_psh(g, ones(2), PLFunction::constant(g, Rat(0)));
  CHECK(ok0);
  REQUIRE(rep0.points.size() == 2);
  CHECK(rep0.points[0].excess == 1);
  CHECK(rep0.points[1].excess == 1);

  auto [ok1, rep1] = is_theta_psh(g, ones(2), affine(g, 0, -2));
  CHECK_FALSE(ok1);
  CHECK(rep1.points[0].excess == -1);
  CHECK(rep1.consistent());

  auto [ok2, rep2] = is_theta_psh(g, ones(2), affine(g, 0, -1));
  CHECK(ok2);
  CHECK(rep2.points[0].excess == 0);
  CHECK(rep2.points[1].excess == 2);
}

TEST_CASE("slope test refuses curvature from another graph") {
  auto g = unit_edge();
  CHECK_THROWS_AS(is_theta_psh(g, ones(3), affine(g, 0, 0)), DimensionMismatch);
}

TEST_CASE("Monge-Ampere measures on a unit edge") {
  auto g = unit_edge();
  CHECK(ma_measure(g, ones(2), PLFunction::constant(g, Rat(0))) == atoms({{v1, 1}, {v2, 1}}));
  auto m = ma_measure(g, ones(2), affine(g, -1, -2));
  CHECK(m == atoms({{v2, 2}}));
  CHECK(m.total_mass() == 2);
}

TEST_CASE("a convex kink carries its slope jump") {
  MetrizedGraph g({"a", "b"}, {{0, 1, Rat(2), 1}});
  // slopes -1 then +2 at offset 1: jump 3
  PLFunction f(g, {Rat(0), Rat(1)}, {{{Rat(1), Rat(-1)}}});
  CurvatureData zero{{Rat(0), Rat(0)}};
  auto kink = GraphPoint::on_edge(g, 0, Rat(1));
  CHECK(ma_measure(g, zero, f) == atoms({{GraphPoint::vertex(0), -1}, {kink, 3}, {GraphPoint::vertex(1), -2}}));
  CHECK(dd_c(g, f).total_mass() == 0);
}

TEST_CASE("dd^c of constants, affine functions and a tripod") {
  auto g = unit_edge();
  CHECK(dd_c(g, PLFunction::constant(g, Rat(4))).atoms().empty());
  CHECK(dd_c(g, affine(g, 0, -2)) == atoms({{v1, -2}, {v2, 2}}));

  MetrizedGraph tripod({"c", "l1", "l2", "l3"},
                       {{0, 1, Rat(1), 1}, {0, 2, Rat(1), 1}, {0, 3, Rat(1), 1}});
  PLFunction neg_dist(tripod, {Rat(0), Rat(-1), Rat(-1), Rat(-1)});
  auto m = dd_c(tripod, neg_dist);
  CHECK(m == atoms({{GraphPoint::vertex(0), -3},
                    {GraphPoint::vertex(1), 1},
                    {GraphPoint::vertex(2), 1},
                    {GraphPoint::vertex(3), 1}}));
  CHECK(m.total_mass() == 0);
}

TEST_CASE("envelope of the zero function under nonnegative curvature") {
  MetrizedGraph g({"a", "b", "c"}, {{0, 1, Rat(1, 2), 1}, {1, 2, Rat(3), 2}, {2, 0, Rat(1), 1}});
  CurvatureData th{{Rat(0), Rat(1, 3), Rat(2)}};
  auto res = envelope(g, th, PLFunction::constant(g, Rat(0)));
  CHECK(same_function(g, res.envelope, PLFunction::constant(g, Rat(0))));
  CHECK(res.lp.objective == 0);
}

TEST_CASE("envelope on a unit edge with a steep obstacle") {
  auto g = unit_edge();
  auto u = affine(g, 0, -2);
  auto res = envelope(g, ones(2), u);
  CHECK(res.envelope.vertex_values() == std::vector<Rat>{-1, -2});
  CHECK(res.envelope.breakpoints(0).empty());
  CHECK(res.certificate.all_nonnegative());
  CHECK(res.certificate.consistent());
  CHECK(res.lp.num_vars == 2);
  CHECK(res.lp.objective == -1);
  CHECK(dominated_by(g, res.envelope, u));

  auto shifted = envelope(g, ones(2), add_constant(g, u, Rat(5, 3))).envelope;
  CHECK(same_function(g, shifted, add_constant(g, res.envelope, Rat(5, 3))));
}

TEST_CASE("envelope with an interior breakpoint in the obstacle") {
  MetrizedGraph g({"a", "b"}, {{0, 1, Rat(2), 1}});
  // A sharp dip in the middle forces the envelope down there.
  PLFunction u(g, {Rat(0), Rat(0)}, {{{Rat(1), Rat(-3)}}});
  CurvatureData th{{Rat(1), Rat(1)}};
  auto res = envelope(g, th, u);
  CHECK(dominated_by(g, res.envelope, u));
  CHECK(res.certificate.all_nonnegative());
  CHECK(res.envelope(g, GraphPoint::on_edge(g, 0, Rat(1))) == -3);
  // Slopes are capped by the degree 1 at each end: value -2 at both ends.
  CHECK(res.envelope.vertex_values() == std::vector<Rat>{-2, -2});
}

TEST_CASE("no theta-psh function below the obstacle") {
  // Negative total degree: no theta-psh function exists at all.
  auto g = unit_edge();
  CurvatureData th{{Rat(-1), Rat(0)}};
  CHECK_THROWS_AS(envelope(g, th, affine(g, 0, 0)), NoPshFunction);
}

TEST_CASE("envelope respects the LP size cap") {
  auto g = unit_edge();
  EnvelopeOptions opts;
  opts.max_lp_vars = 1;
  CHECK_THROWS_AS(envelope(g, ones(2), affine(g, 0, 0), opts), LpTooLarge);
}

TEST_CASE("solving the Monge-Ampere equation") {
  auto g = unit_edge();
  auto f = solve_ma(g, ones(2), atoms({{v1, 2}}), 0);
  CHECK(f.vertex_values() == std::vector<Rat>{0, 1});

  auto zero = solve_ma(g, ones(2), atoms({{v1, 1}, {v2, 1}}), 1);
  CHECK(same_function(g, zero, PLFunction::constant(g, Rat(0))));

  CHECK_THROWS_AS(solve_ma(g, ones(2), atoms({{v1, 3}}), 0), MassMismatch);
  CHECK_THROWS_AS(solve_ma(g, ones(2), atoms({{v1, 3}, {v2, -1}}), 0), std::invalid_argument);
}

TEST_CASE("solve_ma places interior atoms as kinks") {
  MetrizedGraph g({"a", "b"}, {{0, 1, Rat(2), 1}});
  CurvatureData th{{Rat(1), Rat(1)}};
  auto mid = GraphPoint::on_edge(g, 0, Rat(1, 2));
  auto mu = atoms({{mid, 2}});
  auto f = solve_ma(g, th, mu, 0);
  CHECK(ma_measure(g, th, f) == mu);
  CHECK(f.at_vertex(0) == 0);
}

TEST_CASE("energy") {
  auto g = unit_edge();
  auto th = ones(2);
  auto phi = affine(g, 0, -1);
  CHECK(energy(g, th, phi, phi) == 0);
  CHECK(energy(g, th, phi, PLFunction::constant(g, Rat(0))) == Rat(-3, 2));
  CHECK(energy(g, th, PLFunction::constant(g, Rat(0)), phi) == Rat(3, 2));
  CHECK(energy(g, th, add_constant(g, phi, Rat(2, 5)), phi) == Rat(2, 5) * th.total());
}

TEST_CASE("orthogonality residual") {
  auto g = unit_edge();
  CHECK(orthogonality_residual(g, ones(2), affine(g, 0, -1)) == 0);
  CHECK(orthogonality_residual(g, ones(2), affine(g, 0, -2)) == 0);
}
