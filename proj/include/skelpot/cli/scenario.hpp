#pragma once

#include "skelpot/io/json.hpp"
#include "skelpot/io/svg.hpp"

#include <functional>
#include <map>

namespace skelpot::cli {

using io::json;

enum class ExitCode : int { Ok = 0, Internal = 1, Validation = 2, Infeasible = 3 };

struct RunOptions {
  Rat bbox = 3;
  std::size_t max_lp_vars = 512;
};

struct RunOutput {
  json result;
  std::map<std::string, std::string> svgs;  // file name -> document
};

namespace detail {

inline std::size_t vertex_named(const metgraph::MetrizedGraph &g, const json &j,
                                const std::string &where) {
  auto p = io::point_from_json(g, j, where);
  if (!p.is_vertex())
    throw io::SchemaError(where + " must name a vertex");
  return p.vertex_id();
}

inline curvepot::EnvelopeOptions envelope_options(const RunOptions &opts) {
  curvepot::EnvelopeOptions e;
  e.max_lp_vars = opts.max_lp_vars;
  return e;
}

inline RunOutput curve_envelope(const json &s, const RunOptions &opts) {
  auto [g, theta] = io::graph_from_json(io::field(s, "graph", "scenario"));
  auto u = io::pl_from_json(g, io::field(s, "u", "scenario"), "u");
  auto res = curvepot::envelope(g, theta, u, envelope_options(opts));
  RunOutput out;
  out.result["envelope"] = io::pl_to_json(g, res.envelope);
  out.result["lp"] = {{"num_vars", res.lp.num_vars},
                      {"num_constraints", res.lp.num_constraints},
                      {"objective", io::rat_to_json(res.lp.objective)}};
  out.result["theta_psh"] = res.certificate.all_nonnegative();
  out.result["certificate"] = io::slope_report_to_json(g, res.certificate);
  out.result["ma"] = io::measure_to_json(g, curvepot::ma_measure(g, theta, res.envelope));
  out.svgs["graph.svg"] = io::render_graph(g, &res.envelope);
  return out;
}

inline RunOutput curve_solve_ma(const json &s, const RunOptions &) {
  auto [g, theta] = io::graph_from_json(io::field(s, "graph", "scenario"));
  auto mu = io::measure_from_json(g, io::field(s, "measure", "scenario"), "measure");
  std::size_t anchor = vertex_named(g, io::field(s, "anchor", "scenario"), "anchor");
  auto f = curvepot::solve_ma(g, theta, mu, anchor);
  RunOutput out;
  out.result["solution"] = io::pl_to_json(g, f);
  out.result["anchor"] = g.name(anchor);
  out.result["reproduces_measure"] = curvepot::ma_measure(g, theta, f) == mu;
  out.svgs["graph.svg"] = io::render_graph(g, &f);
  return out;
}

inline RunOutput curve_orthogonality(const json &s, const RunOptions &opts) {
  auto [g, theta] = io::graph_from_json(io::field(s, "graph", "scenario"));
  auto u = io::pl_from_json(g, io::field(s, "u", "scenario"), "u");
  auto env = curvepot::envelope(g, theta, u, envelope_options(opts)).envelope;
  Rat residual = curvepot::ma_measure(g, theta, env).integrate(g, subtract(g, u, env));
  RunOutput out;
  out.result["envelope"] = io::pl_to_json(g, env);
  out.result["residual"] = io::rat_to_json(residual);
  out.result["orthogonal"] = residual == 0;
  out.svgs["graph.svg"] = io::render_graph(g, &env);
  return out;
}

/// With "envelopes": true the energy is taken between P(phi1) and P(phi2).
inline RunOutput curve_energy(const json &s, const RunOptions &opts) {
  auto [g, theta] = io::graph_from_json(io::field(s, "graph", "scenario"));
  auto phi1 = io::pl_from_json(g, io::field(s, "phi1", "scenario"), "phi1");
  auto phi2 = io::pl_from_json(g, io::field(s, "phi2", "scenario"), "phi2");
  bool take_envelopes = false;
  if (s.contains("envelopes")) {
    if (!s["envelopes"].is_boolean())
      throw io::SchemaError("envelopes must be a boolean");
    take_envelopes = s["envelopes"].get<bool>();
  }
  if (take_envelopes) {
    phi1 = curvepot::envelope(g, theta, phi1, envelope_options(opts)).envelope;
    phi2 = curvepot::envelope(g, theta, phi2, envelope_options(opts)).envelope;
  }
  RunOutput out;
  out.result["phi1"] = io::pl_to_json(g, phi1);
  out.result["phi2"] = io::pl_to_json(g, phi2);
  out.result["energy"] = io::rat_to_json(curvepot::energy(g, theta, phi1, phi2));
  return out;
}

inline toricskel::Fan fan_from_json(const json &s) {
  if (!s.contains("fan") || (s["fan"].is_string() && s["fan"] == "P2"))
    return toricskel::projective_plane_fan();
  const json &cs = io::array_field(s["fan"], "cones", "fan");
  toricskel::Fan f{2, {}};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string at = "fan.cones[" + std::to_string(i) + "]";
    std::vector<RatVec> rays;
    const json &rs = io::array_field(cs[i], "rays", at);
    for (std::size_t k = 0; k < rs.size(); ++k)
      rays.push_back(io::vec_from_json(rs[k], at + ".rays[" + std::to_string(k) + "]"));
    f.cones.push_back(rays.empty() ? make_polyhedron({RatVec(2)}) : toricskel::make_cone(rays));
  }
  return f;
}

inline json report_to_json(const toricskel::ComplexReport &rep) {
  return {{"valid", rep.valid()},
          {"cells_ok", rep.cells_ok},
          {"face_compatible", rep.face_compatible},
          {"complete", rep.complete},
          {"recession_matches", rep.recession_matches},
          {"simplicial", rep.simplicial},
          {"unimodular", rep.unimodular},
          {"diagnostics", rep.diagnostics}};
}

inline RunOutput toric_skeleton(const json &s, const RunOptions &opts) {
  auto cx = io::complex_from_json(io::field(s, "complex", "scenario"));
  auto rep = toricskel::validate_complex(cx, fan_from_json(s));
  RunOutput out;
  out.result["validation"] = report_to_json(rep);
  toricskel::require_valid(rep);
  auto sk = toricskel::skeleton(cx);
  out.result["skeleton"] = io::complex_to_json(sk);
  out.svgs["complex.svg"] = io::render_complex(cx, opts.bbox);
  out.svgs["skeleton.svg"] = io::render_complex(sk, opts.bbox);
  return out;
}

inline RunOutput toric_retract(const json &s, const RunOptions &opts) {
  auto cx = io::complex_from_json(io::field(s, "complex", "scenario"));
  toricskel::require_valid(toricskel::validate_complex(cx, fan_from_json(s)));
  const json &pts = io::array_field(s, "points", "scenario");
  RunOutput out;
  out.result["images"] = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    RatVec u = io::vec_from_json(pts[i], "points[" + std::to_string(i) + "]");
    if (u.size() != 2)
      throw io::SchemaError("points[" + std::to_string(i) + "] must be planar");
    out.result["images"].push_back(
        {{"point", io::vec_to_json(u)}, {"image", io::vec_to_json(toricskel::retraction(cx, u))}});
  }
  out.svgs["complex.svg"] = io::render_complex(cx, opts.bbox);
  return out;
}

/// One affine piece per cell; with "support_polytope" the support function of
/// that lattice polygon is added first.
inline toricskel::ToricPLFunction toric_function(const json &s) {
  auto cx = io::complex_from_json(io::field(s, "complex", "scenario"));
  auto pieces = io::pieces_from_json(io::field(s, "pieces", "scenario"), "pieces");
  toricskel::ToricPLFunction f(std::move(cx), std::move(pieces));
  if (!s.contains("support_polytope"))
    return f;
  std::vector<RatVec> verts;
  const json &ps = s["support_polytope"];
  if (!ps.is_array())
    throw io::SchemaError("support_polytope must be an array of points");
  for (std::size_t i = 0; i < ps.size(); ++i)
    verts.push_back(io::vec_from_json(ps[i], "support_polytope[" + std::to_string(i) + "]"));
  return toricskel::add_support(toricskel::MinAffine::of_polytope(verts), f);
}

inline json witness_to_json(const toricskel::PolyComplex &cx, const toricskel::ConcavityWitness &w) {
  return {{"from", cx.label(w.from)},
          {"into", cx.label(w.into)},
          {"facet", io::polyhedron_to_json(w.facet)},
          {"point", io::vec_to_json(w.point)},
          {"gap", io::rat_to_json(w.gap)}};
}

inline RunOutput toric_concavity(const json &s, const RunOptions &opts) {
  auto h = toric_function(s);
  auto verdict = toricskel::is_concave(h);
  RunOutput out;
  out.result["function"] = io::pieces_to_json(h.pieces());
  out.result["concave"] = verdict.concave;
  out.result["witness"] =
      verdict.witness ? witness_to_json(h.complex(), *verdict.witness) : json(nullptr);
  out.svgs["complex.svg"] = io::render_complex(h.complex(), opts.bbox);
  return out;
}

inline json toric_measure_to_json(const toricskel::ToricAtomicMeasure &mu) {
  json atoms = json::array();
  for (const auto &a : mu.atoms)
    atoms.push_back({{"point", io::vec_to_json(a.point)}, {"mass", io::rat_to_json(a.mass)}});
  return {{"atoms", std::move(atoms)}, {"total_mass", io::rat_to_json(mu.total_mass())}};
}

/// Either {"complex", "pieces"} or a bare minimum of affine "pieces".
inline RunOutput toric_ma(const json &s, const RunOptions &) {
  std::vector<RatVec> polytope;
  const json &ps = io::array_field(s, "polytope", "scenario");
  for (std::size_t i = 0; i < ps.size(); ++i)
    polytope.push_back(io::vec_from_json(ps[i], "polytope[" + std::to_string(i) + "]"));
  toricskel::ToricAtomicMeasure mu;
  if (s.contains("complex"))
    mu = toricskel::toric_ma(toric_function(s), polytope);
  else
    mu = toricskel::toric_ma(
        toricskel::MinAffine{io::pieces_from_json(io::field(s, "pieces", "scenario"), "pieces")},
        polytope);
  RunOutput out;
  out.result["measure"] = toric_measure_to_json(mu);
  out.result["normalized_volume"] = io::rat_to_json(toricskel::normalized_volume(polytope));
  return out;
}

/// The five checkable facts about the two models, plus their pictures.
inline RunOutput toric_counterexample(const json &, const RunOptions &opts) {
  using namespace toricskel;
  const auto fx = counterexample_fixture();
  const Polyhedron simplex = make_polyhedron(fx.polytope);
  const auto sk = skeleton(fx.pi), sk_prime = skeleton(fx.pi_prime);
  const bool skeleton_is_simplex = sk.cells.size() == 1 && sk_prime.cells.size() == 1 &&
                                   same_set(sk.cells[0], simplex) &&
                                   same_set(sk_prime.cells[0], simplex);

  const auto h_prime = add_support(fx.psi, fx.f_prime);
  const auto h = add_support(fx.psi, fx.f);
  // A concave function is the minimum of its pieces, so comparing piece sets
  // decides identity with min(1, 1 + v, u).
  const MinAffine expected{{{ints({0, 0}), Rat(1)}, {ints({0, 1}), Rat(1)}, {ints({1, 0}), Rat(0)}}};
  bool equals_min = true;
  for (std::size_t i = 0; i < h_prime.pieces().size(); ++i)
    for (const auto &p : h_prime.complex().cells[i].points)
      equals_min = equals_min && h_prime(p) == expected(p);
  const auto prime_verdict = is_concave(h_prime);
  equals_min = equals_min && as_min_affine(h_prime).pieces.size() == expected.pieces.size();
  for (const auto &piece : as_min_affine(h_prime).pieces)
    equals_min = equals_min && std::find(expected.pieces.begin(), expected.pieces.end(), piece) !=
                                   expected.pieces.end();

  const auto verdict = is_concave(h);
  bool witness_on_s1_s3 = false;
  if (verdict.witness) {
    auto from = h.complex().label(verdict.witness->from), into = h.complex().label(verdict.witness->into);
    witness_on_s1_s3 = (from == "s1" && into == "s3") || (from == "s3" && into == "s1");
  }

  const auto mu = toric_ma(h_prime, fx.polytope);
  const bool unit_atom = mu == ToricAtomicMeasure{{{ints({1, 0}), Rat(1)}}};

  const auto on_skeleton = restrict_to(fx.f, sk), on_skeleton_prime = restrict_to(fx.f_prime, sk);
  const bool restrictions_agree = same_function(on_skeleton, fx.g) &&
                                  same_function(on_skeleton_prime, fx.g);
  const bool functions_differ = !same_function(fx.f, fx.f_prime);

  RunOutput out;
  out.result["facts"] = {
      {"skeletons_equal_unit_simplex", skeleton_is_simplex},
      {"psi_plus_f_prime_concave_and_equals_min_1_1pv_u", prime_verdict.concave && equals_min},
      {"psi_plus_f_not_concave_witness_on_s1_s3", !verdict.concave && witness_on_s1_s3},
      {"ma_of_psi_plus_f_prime_is_unit_atom_at_1_0", unit_atom},
      {"restrictions_to_skeleton_agree_but_functions_differ",
       restrictions_agree && functions_differ},
  };
  out.result["pi"] = io::complex_to_json(fx.pi);
  out.result["pi_prime"] = io::complex_to_json(fx.pi_prime);
  out.result["psi_plus_f"] = io::pieces_to_json(h.pieces());
  out.result["psi_plus_f_prime"] = io::pieces_to_json(h_prime.pieces());
  out.result["witness"] =
      verdict.witness ? witness_to_json(h.complex(), *verdict.witness) : json(nullptr);
  out.result["ma"] = toric_measure_to_json(mu);
  out.svgs["pi.svg"] = io::render_complex(fx.pi, opts.bbox);
  out.svgs["pi_prime.svg"] = io::render_complex(fx.pi_prime, opts.bbox);
  out.svgs["skeleton.svg"] = io::render_complex(sk, opts.bbox);
  return out;
}

inline std::int64_t prime_from_json(const json &s) {
  auto p = io::integer(io::field(s, "p", "scenario"), "p");
  testideals::require_prime(p);
  return p;
}

/// {"ideal", "p", "lambda"} for tau(a^lambda), optionally with "power": m for
/// tau((a^m)^lambda); {"sequence": {"powers": ideal} | {"table": [ideals]}}
/// for the asymptotic version.
inline RunOutput testideal(const json &s, const RunOptions &) {
  const std::int64_t p = prime_from_json(s);
  const Rat lambda = io::rat_from_json(io::field(s, "lambda", "scenario"), "lambda");
  RunOutput out;
  if (s.contains("sequence")) {
    const json &q = s["sequence"];
    auto seq = [&] {
      if (q.contains("powers"))
        return testideals::GradedSequence::powers(io::ideal_from_json(q["powers"], "sequence.powers"));
      const json &t = io::array_field(q, "table", "sequence");
      std::vector<testideals::MonomialIdeal> terms;
      for (std::size_t i = 0; i < t.size(); ++i)
        terms.push_back(io::ideal_from_json(t[i], "sequence.table[" + std::to_string(i) + "]"));
      return testideals::GradedSequence::table(std::move(terms));
    }();
    auto tr = testideals::asymptotic_test_ideal_trace(seq, lambda, p);
    out.result["test_ideal"] = io::ideal_to_json(tr.result);
    out.result["evaluated"] = json::array();
    for (std::size_t i = 0; i < tr.indices.size(); ++i)
      out.result["evaluated"].push_back({{"m", tr.indices[i]}, {"ideal", io::ideal_to_json(tr.values[i])}});
    return out;
  }
  auto a = io::ideal_from_json(io::field(s, "ideal", "scenario"), "ideal");
  std::int64_t m = s.contains("power") ? io::integer(s["power"], "power") : 1;
  if (m < 0)
    throw io::SchemaError("power must be non-negative");
  auto tr = testideals::test_ideal_trace({a, m}, lambda, p);
  out.result["test_ideal"] = io::ideal_to_json(tr.result());
  out.result["stable_at_e"] = tr.stable_at;
  out.result["chain"] = json::array();
  for (const auto &c : tr.chain)
    out.result["chain"].push_back(io::ideal_to_json(c));
  return out;
}

using Handler = std::function<RunOutput(const json &, const RunOptions &)>;

inline const std::map<std::string, Handler> &handlers() {
  static const std::map<std::string, Handler> table = {
      {"curve-envelope", curve_envelope},
      {"curve-solve-ma", curve_solve_ma},
      {"curve-orthogonality", curve_orthogonality},
      {"curve-energy", curve_energy},
      {"toric-skeleton", toric_skeleton},
      {"toric-retract", toric_retract},
      {"toric-concavity", toric_concavity},
      {"toric-ma", toric_ma},
      {"toric-counterexample", toric_counterexample},
      {"testideal", testideal},
  };
  return table;
}

} // namespace detail

inline std::vector<std::string> scenario_kinds() {
  std::vector<std::string> kinds;
  for (const auto &[k, _] : detail::handlers())
    kinds.push_back(k);
  return kinds;
}

/// Keys every result of a kind must carry, besides "kind" and "name".
inline const std::vector<std::string> &required_result_keys(const std::string &kind) {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"curve-envelope", {"envelope", "lp", "theta_psh", "certificate", "ma"}},
      {"curve-solve-ma", {"solution", "anchor", "reproduces_measure"}},
      {"curve-orthogonality", {"envelope", "residual", "orthogonal"}},
      {"curve-energy", {"phi1", "phi2", "energy"}},
      {"toric-skeleton", {"validation", "skeleton"}},
      {"toric-retract", {"images"}},
      {"toric-concavity", {"function", "concave", "witness"}},
      {"toric-ma", {"measure", "normalized_volume"}},
      {"toric-counterexample", {"facts", "pi", "pi_prime", "psi_plus_f", "psi_plus_f_prime", "witness", "ma"}},
      {"testideal", {"test_ideal"}},
  };
  auto it = keys.find(kind);
  if (it == keys.end())
    throw io::SchemaError("unknown scenario kind \"" + kind + "\"");
  return it->second;
}

/// Result schema: known kind, required keys present, no floats anywhere.
inline void validate_result(const json &r) {
  const std::string kind = io::text(io::field(r, "kind", "result"), "result.kind");
  for (const auto &k : required_result_keys(kind))
    io::field(r, k.c_str(), "result");
  io::require_no_floats(r);
}

inline RunOutput run_scenario(const json &scenario, const RunOptions &opts = {}) {
  io::require_no_floats(scenario);
  const std::string kind = io::text(io::field(scenario, "kind", "scenario"), "scenario.kind");
  auto it = detail::handlers().find(kind);
  if (it == detail::handlers().end())
    throw io::SchemaError("unknown scenario kind \"" + kind + "\"");
  RunOutput body = it->second(scenario, opts);
  RunOutput out;
  out.result["kind"] = kind;
  out.result["name"] = scenario.contains("name") ? scenario["name"] : json(kind);
  for (auto e = body.result.begin(); e != body.result.end(); ++e)
    out.result[e.key()] = e.value();
  out.svgs = std::move(body.svgs);
  validate_result(out.result);
  return out;
}

/// Built-in scenarios, addressable as "builtin:NAME".
inline const std::map<std::string, json> &builtin_scenarios() {
  static const std::map<std::string, json> table = [] {
    std::map<std::string, json> t;
    // Brace lists of string pairs would be read as objects.
    auto pt = [](const char *x, const char *y) { return json::array({x, y}); };
    const json unit_edge = {{"vertices", {"v1", "v2"}},
                            {"edges", {{{"a", "v1"}, {"b", "v2"}, {"len", "1"}, {"w", 1}}}},
                            {"theta", {{"v1", "1"}, {"v2", "1"}}}};
    const json tripod = {{"vertices", {"c", "l1", "l2", "l3"}},
                         {"edges",
                          {{{"a", "c"}, {"b", "l1"}, {"len", "1"}, {"w", 1}},
                           {{"a", "c"}, {"b", "l2"}, {"len", "1/2"}, {"w", 1}},
                           {{"a", "c"}, {"b", "l3"}, {"len", "3/2"}, {"w", 2}}}},
                         {"theta", {{"c", "1"}, {"l1", "1/3"}, {"l2", "1/3"}, {"l3", "1/3"}}}};
    t["counterexample"] = {{"kind", "toric-counterexample"}, {"name", "counterexample"}};
    t["envelope_edge"] = {{"kind", "curve-envelope"},
                          {"name", "envelope_edge"},
                          {"graph", unit_edge},
                          {"u", {{"vertex_values", {{"v1", "0"}, {"v2", "-2"}}}}}};
    t["orthogonality_edge"] = {{"kind", "curve-orthogonality"},
                               {"name", "orthogonality_edge"},
                               {"graph", unit_edge},
                               {"u", {{"vertex_values", {{"v1", "0"}, {"v2", "-2"}}}}}};
    t["solve_ma_edge"] = {{"kind", "curve-solve-ma"},
                          {"name", "solve_ma_edge"},
                          {"graph", unit_edge},
                          {"measure", {{"atoms", {{{"point", "v1"}, {"mass", "2"}}}}}},
                          {"anchor", "v1"}};
    t["energy_edge"] = {{"kind", "curve-energy"},
                        {"name", "energy_edge"},
                        {"graph", unit_edge},
                        {"phi1", {{"vertex_values", {{"v1", "0"}, {"v2", "-1"}}}}},
                        {"phi2", {{"vertex_values", {{"v1", "0"}, {"v2", "0"}}}}}};
    t["envelope_tripod"] = {
        {"kind", "curve-envelope"},
        {"name", "envelope_tripod"},
        {"graph", tripod},
        {"u",
         {{"vertex_values", {{"c", "0"}, {"l1", "-3"}, {"l2", "1"}, {"l3", "-1/2"}}},
          {"breakpoints", {{{"edge", 0}, {"offset", "1/2"}, {"value", "1"}}}}}}};
    t["ideal_square"] = {{"kind", "testideal"},
                         {"name", "ideal_square"},
                         {"ideal", {{"n", 2}, {"gens", {{2, 0}, {1, 1}, {0, 2}}}}},
                         {"p", 2},
                         {"lambda", "1"}};
    t["ideal_asymptotic"] = {{"kind", "testideal"},
                             {"name", "ideal_asymptotic"},
                             {"sequence", {{"powers", {{"n", 2}, {"gens", {{3, 0}, {0, 2}}}}}}},
                             {"p", 3},
                             {"lambda", "5/6"}};
    t["retract_pi"] = {{"kind", "toric-retract"},
                       {"name", "retract_pi"},
                       {"complex", io::complex_to_json(toricskel::counterexample_pi())},
                       {"points", json::array({pt("5", "-2"), pt("3", "1/3"), pt("1/4", "1/4"), pt("-2", "-7")})}};
    t["skeleton_pi_prime"] = {{"kind", "toric-skeleton"},
                              {"name", "skeleton_pi_prime"},
                              {"complex", io::complex_to_json(toricskel::counterexample_pi_prime())}};
    t["ma_min_1_1pv_u"] = {{"kind", "toric-ma"},
                           {"name", "ma_min_1_1pv_u"},
                           {"pieces",
                            {{{"gradient", pt("0", "0")}, {"constant", "1"}},
                             {{"gradient", pt("0", "1")}, {"constant", "1"}},
                             {{"gradient", pt("1", "0")}, {"constant", "0"}}}},
                           {"polytope", json::array({pt("0", "0"), pt("1", "0"), pt("0", "1")})}};
    return t;
  }();
  return table;
}

/// Exit code for an exception escaping run_scenario.
inline ExitCode classify(const std::exception &e) {
  if (dynamic_cast<const curvepot::NoPshFunction *>(&e) ||
      dynamic_cast<const curvepot::MassMismatch *>(&e))
    return ExitCode::Infeasible;
  if (dynamic_cast<const std::invalid_argument *>(&e) ||
      dynamic_cast<const curvepot::LpTooLarge *>(&e) ||
      dynamic_cast<const json::exception *>(&e))
    return ExitCode::Validation;
  return ExitCode::Internal;
}

inline json error_json(const std::exception &e) {
  const ExitCode code = classify(e);
  const char *category = code == ExitCode::Infeasible   ? "infeasible"
                         : code == ExitCode::Validation ? "validation"
                                                        : "internal";
  return {{"error", {{"code", static_cast<int>(code)}, {"category", category}, {"message", e.what()}}}};
}

} // namespace skelpot::cli
