#include "support/curve_suites.hpp"

#include <catch_amalgamated.hpp>

using namespace skelpot;
using namespace skelpot::metgraph;

namespace {

void require_clean(const suite::Outcome &o) {
  INFO(o.summary());
  CHECK(o.ok());
}

} // namespace

TEST_CASE("slopes telescope: MA mass equals the total degree") {
  gen::Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    auto g = gen::graph(rng);
    auto th = gen::nef_theta(rng, g);
    auto f = gen::pl_function(rng, g, 3);
    CHECK(curvepot::ma_measure(g, th, f).total_mass() == th.total());
    CHECK(curvepot::dd_c(g, f).total_mass() == 0);
    CHECK(curvepot::slope_report(g, th, f).consistent());
  }
}

TEST_CASE("envelope laws on random instances") { require_clean(suite::envelope_laws(2, 120)); }

TEST_CASE("envelope is concave in (theta, u) on a fixed graph") {
  gen::Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    auto g = gen::graph(rng);
    auto th1 = gen::nef_theta(rng, g), th2 = gen::nef_theta(rng, g);
    auto u1 = gen::pl_function(rng, g), u2 = gen::pl_function(rng, g);
    Rat t = gen::frac(gen::uniform(rng, 1, 4), 5);
    CurvatureData mix;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      mix.degree.push_back(t * th1.degree[v] + (1 - t) * th2.degree[v]);
    auto umix = add(g, scale(g, u1, t), scale(g, u2, 1 - t));
    auto lhs = add(g, scale(g, curvepot::envelope(g, th1, u1).envelope, t),
                   scale(g, curvepot::envelope(g, th2, u2).envelope, 1 - t));
    CHECK(dominated_by(g, lhs, curvepot::envelope(g, mix, umix).envelope));
  }
}

TEST_CASE("envelope lies below u and touches it wherever MA charges") {
  gen::Rng rng(4);
  for (int i = 0; i < 80; ++i) {
    auto in = suite::curve_instance(rng);
    auto res = curvepot::envelope(in.g, in.theta, in.u);
    CHECK(dominated_by(in.g, res.envelope, in.u));
    CHECK(res.certificate.all_nonnegative());
    auto mu = curvepot::ma_measure(in.g, in.theta, res.envelope);
    for (const auto &a : mu.atoms())
      if (a.mass > 0)
        CHECK(res.envelope(in.g, a.point) == in.u(in.g, a.point));
  }
}

TEST_CASE("orthogonality on random instances") { require_clean(suite::orthogonality(5, 80)); }

TEST_CASE("retraction preserves psh and dominates") { require_clean(suite::retraction_psh(6, 80)); }

TEST_CASE("solve_ma inverts ma_measure up to a constant") { require_clean(suite::solve_ma_roundtrip(7, 120)); }

TEST_CASE("energies are exact and serialize without floats") { require_clean(suite::rationality(8, 40)); }

TEST_CASE("energy is antisymmetric and translation-linear") {
  gen::Rng rng(9);
  for (int i = 0; i < 60; ++i) {
    auto g = gen::graph(rng);
    auto pair = gen::psh_by_construction(rng, g);
    auto other = curvepot::envelope(g, pair.theta, gen::pl_function(rng, g)).envelope;
    Rat c = gen::rational(rng, -2, 2, 7);
    CHECK(curvepot::energy(g, pair.theta, pair.f, other) == -curvepot::energy(g, pair.theta, other, pair.f));
    CHECK(curvepot::energy(g, pair.theta, add_constant(g, other, c), other) == c * pair.theta.total());
  }
}

TEST_CASE("grid oracle with mixed curvature degrees") {
  // theta in {1, 2}^n keeps this fast; the acceptance run covers theta = 1.
  auto rep = suite::grid_oracle(1, 2);
  INFO(rep.outcome.summary());
  CHECK(rep.outcome.ok());
  CHECK(rep.worst_gap < Rat(1, 64));
}
