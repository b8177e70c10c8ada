#include "skelpot/io/json.hpp"
#include "skelpot/io/svg.hpp"
#include "skelpot/toricskel/fixtures.hpp"
#include "support/generators.hpp"

#include <catch_amalgamated.hpp>

using namespace skelpot;
using io::json;

namespace {

std::size_t count(const std::string &hay, const std::string &needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1))
    ++n;
  return n;
}

} // namespace

TEST_CASE("rationals in JSON are strings or integers, never floats") {
  CHECK(io::rat_from_json(json("3/6"), "x") == Rat(1, 2));
  CHECK(io::rat_from_json(json(-4), "x") == -4);
  CHECK_THROWS_AS(io::rat_from_json(json(0.5), "x"), io::SchemaError);
  CHECK_THROWS_AS(io::rat_from_json(json("1/0"), "x"), ParseError);
  CHECK(io::rat_to_json(Rat(-6) / 4) == json("-3/2"));

  CHECK_NOTHROW(io::require_no_floats(json::parse(R"({"a":[1,"2/3",{"b":true}]})")));
  CHECK_THROWS_AS(io::require_no_floats(json::parse(R"({"a":[1,{"b":2.5}]})")), io::SchemaError);
}

TEST_CASE("graphs, functions and measures round-trip through JSON") {
  gen::Rng rng(40);
  for (int i = 0; i < 50; ++i) {
    auto g = gen::graph(rng);
    auto th = gen::nef_theta(rng, g);
    auto f = gen::pl_function(rng, g);
    auto gj = io::graph_to_json(g, th);
    io::require_no_floats(gj);
    auto back = io::graph_from_json(json::parse(gj.dump()));
    CHECK(back.graph == g);
    CHECK(back.theta.degree == th.degree);

    auto fj = io::pl_to_json(g, f);
    io::require_no_floats(fj);
    CHECK(same_function(g, io::pl_from_json(g, json::parse(fj.dump()), "f"), f));

    auto mu = curvepot::ma_measure(g, th, f);
    auto mj = io::measure_to_json(g, mu);
    io::require_no_floats(mj);
    CHECK(io::measure_from_json(g, mj, "mu") == mu);
    CHECK(io::rat_from_json(mj.at("total_mass"), "total") == mu.total_mass());
  }
}

TEST_CASE("malformed graph payloads name the offending field") {
  auto bad_vertex = json::parse(R"({"vertices":["a"],"edges":[{"a":"a","b":"z","len":"1"}]})");
  try {
    io::graph_from_json(bad_vertex);
    FAIL("accepted an unknown vertex");
  } catch (const io::SchemaError &e) {
    CHECK(std::string(e.what()).find("graph.edges[0].b") != std::string::npos);
  }
  auto float_len = json::parse(R"({"vertices":["a","b"],"edges":[{"a":"a","b":"b","len":1.5}]})");
  CHECK_THROWS_AS(io::graph_from_json(float_len), io::SchemaError);
}

TEST_CASE("complexes and ideals round-trip through JSON") {
  auto pi = toricskel::counterexample_pi();
  auto j = io::complex_to_json(pi);
  io::require_no_floats(j);
  auto back = io::complex_from_json(json::parse(j.dump()));
  REQUIRE(back.cells.size() == pi.cells.size());
  for (std::size_t i = 0; i < pi.cells.size(); ++i) {
    CHECK(same_set(back.cells[i], pi.cells[i]));
    CHECK(back.label(i) == pi.label(i));
  }

  testideals::MonomialIdeal a(2, {{2, 0}, {1, 1}});
  auto aj = io::ideal_to_json(a);
  CHECK(io::ideal_from_json(aj, "a") == a);
  CHECK(aj.at("text") == "(x*y, x^2)");
}

TEST_CASE("SVG output is deterministic and draws each edge once") {
  toricskel::PolyComplex tri{2, {make_polyhedron({ints({0, 0}), ints({1, 0}), ints({0, 1})})}, {"T"}};
  auto a = io::render_complex(tri, Rat(3));
  CHECK(a == io::render_complex(tri, Rat(3)));
  CHECK(count(a, "<line") == 3);
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("T") != std::string::npos);

  auto pi = toricskel::counterexample_pi();
  CHECK(io::render_complex(pi, Rat(3)) == io::render_complex(pi, Rat(3)));
  CHECK(io::render_complex(pi, Rat(3)) != io::render_complex(pi, Rat(4)));

  metgraph::MetrizedGraph g({"v1", "v2"}, {{0, 1, Rat(1), 1}, {0, 1, Rat(2), 1}, {1, 1, Rat(1), 1}});
  metgraph::PLFunction f(g, {Rat(0), Rat(-1)});
  auto s = io::render_graph(g, &f);
  CHECK(s == io::render_graph(g, &f));
  CHECK(count(s, "<path") == 2);
  CHECK(count(s, "<circle") >= 1);
  CHECK(s.find("v2 = -1") != std::string::npos);
}

TEST_CASE("pixel snapping rounds half up") {
  CHECK(io::svg_detail::snap(Rat(1, 200)) == 1);
  CHECK(io::svg_detail::snap(Rat(-1, 200)) == 0);
  CHECK(io::svg_detail::snap(Rat(7, 3)) == 233);
}
