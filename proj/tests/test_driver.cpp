#include "doctest.h"

#include "cobord/checks.hpp"
#include "cobord/driver.hpp"
#include "cobord/errors.hpp"
#include "cobord/parser.hpp"

using namespace cobord;

namespace {

Problem problem_json(const char* text) {
  return Problem::from_json(nlohmann::json::parse(text));
}

}  // namespace

TEST_CASE("problem JSON parsing and validation") {
  Problem p = problem_json(R"({
    "field": "Q",
    "vars": ["x1", "x2", "x3"],
    "divisors": ["x1", "x2"],
    "generators": ["(x1+x2^2)^2+x3^7"],
    "mode": "principalize",
    "options": {"precision": 0, "max_steps": 8, "divisor_policy": "total"}
  })");
  CHECK(p.vars.size() == 3);
  CHECK(p.divisor_vars == std::vector<std::string>{"x1", "x2"});
  CHECK(p.options.max_steps == 8);
  CHECK(Problem::from_json(p.to_json()).to_json() == p.to_json());

  CHECK_THROWS_AS(problem_json(R"({"vars":["x"],"generators":["x"],
                                   "divisors":["nope"]})"),
                  UnknownVariable);
  CHECK_THROWS_AS(problem_json(R"({"vars":["x"],"generators":["x"],
                                   "mode":"bogus"})"),
                  Error);
}

TEST_CASE("principalization of the cusp stops after one blow-up") {
  Problem p = problem_json(
      R"({"vars":["x","y"],"generators":["x^2+y^3"],"mode":"principalize"})");
  Trace t = run_principalize(p, Plan{});
  REQUIRE(t.invariants.size() == 1);
  CHECK(t.invariants[0].to_string() == "(2,3)");
  CHECK(t.status == "principalized-at-samples");
  CHECK(t.steps.size() == 1);
  CHECK(t.steps[0].at("generators")[0] == "x'^2+y'^3");
}

TEST_CASE("exceptional-supported monomials need no blow-up") {
  Problem p = problem_json(R"({
    "vars": ["x", "y"], "divisors": ["x", "y"],
    "generators": ["x^2*y"], "mode": "principalize"})");
  Trace t = run_principalize(p, Plan{});
  CHECK(t.status == "principalized");
  CHECK(t.steps.empty());
  CHECK(t.final_state.at("blowups") == 0);
}

TEST_CASE("SNC pair with the plan point takes exactly two drops") {
  Problem p = problem_json(R"({
    "vars": ["x1", "x2", "x3"], "divisors": ["x1", "x2"],
    "generators": ["(x1+x2^2)^2+x3^7"], "mode": "principalize"})");
  Plan plan;
  plan.steps.resize(2);
  plan.steps[1].point = std::vector<std::string>{"0", "-1", "1", "0"};
  Trace t = run_principalize(p, plan);
  REQUIRE(t.invariants.size() >= 2);
  CHECK(t.invariants[0].to_string() == "(2+,4+,7)");
  CHECK(t.invariants[1].to_string() == "(2,7)");
  CHECK(t.invariants[1] < t.invariants[0]);
  // Step 0 chart: weights (14, 7, 4) on the primed variables.
  CHECK(t.steps[0].at("chart").at("vars")[0].at("weight") == 14);
  CHECK(t.steps[0].at("chart").at("vars")[1].at("weight") == 7);
  CHECK(t.steps[0].at("chart").at("vars")[2].at("weight") == 4);
}

TEST_CASE("plan coordinate change") {
  Problem p = problem_json(R"({
    "vars": ["x1", "x2", "x3"],
    "generators": ["(x1+x2^2)^2+x3^7"], "mode": "principalize"})");
  Plan plan = Plan::from_json(nlohmann::json::parse(R"({
    "steps": [{"changes": ["u := x1 + x2^2"]}]})"));
  Trace t = run_principalize(p, plan);
  REQUIRE(!t.invariants.empty());
  CHECK(t.invariants[0].to_string() == "(2,7)");
  // The renamed coordinate flows into the chart.
  CHECK(t.steps[0].at("center").at("entries")[0].at("param") == "u");
}

TEST_CASE("embedded resolution stops at an all-ones invariant") {
  SUBCASE("already smooth hypersurface") {
    Problem p = problem_json(R"({
      "vars": ["x", "y"], "generators": ["x+y^2"], "mode": "embedded"})");
    Trace t = run_embedded(p, Plan{});
    CHECK(t.status == "smooth-snc");
    CHECK(t.final_state.at("blowups") == 0);
    REQUIRE(t.invariants.size() == 1);
    CHECK(t.invariants[0].to_string() == "(1)");
  }
  SUBCASE("cusp becomes smooth after one blow-up") {
    Problem p = problem_json(R"({
      "vars": ["x", "y"], "generators": ["x^2+y^3"], "mode": "embedded"})");
    Plan plan;
    plan.steps.resize(2);
    plan.steps[1].point = std::vector<std::string>{"0", "1", "-1"};
    Trace t = run_embedded(p, plan);
    CHECK(t.status == "smooth-snc");
    REQUIRE(t.invariants.size() == 2);
    CHECK(t.invariants[0].to_string() == "(2,3)");
    CHECK(t.invariants[1].to_string() == "(1)");
  }
}

TEST_CASE("embedded run of the two-block input drops strictly to smoothness") {
  Problem p = problem_json(R"({
    "vars": ["x1","x2","x3","x4","x5","x6"],
    "generators": ["x1*x2*x3+x4^4+x5^2*x6^2"], "mode": "embedded",
    "options": {"max_steps": 8}})");
  Trace t = run_embedded(p, Plan{});
  CHECK(t.status == "smooth-snc");
  REQUIRE(!t.invariants.empty());
  CHECK(t.invariants[0].to_string() == "(3,3,3,4,4,4)");
  CHECK(t.invariants.back().is_all_ones());
  for (std::size_t i = 1; i < t.invariants.size(); ++i)
    CHECK(t.invariants[i] < t.invariants[i - 1]);
  // First center: ((x1,x2,x3):3, (x4,x5,x6):4).
  CHECK(t.steps[0].at("center").at("entries")[0].at("a") == "3");
  CHECK(t.steps[0].at("center").at("entries")[5].at("a") == "4");
}

TEST_CASE("invariant-only and blowup-only entry points") {
  Problem p = problem_json(R"({
    "vars": ["x1", "x2", "x3"], "divisors": ["x1", "x2"],
    "generators": ["(x1+x2^2)^2+x3^7"], "mode": "inv-only"})");
  nlohmann::json inv = run_inv(p);
  CHECK(inv.at("inv") == nlohmann::json({"2+", "4+", "7"}));
  CHECK(inv.at("center").at("entries").size() == 3);

  nlohmann::json blow = run_blowup(p);
  CHECK(blow.at("chart").at("exceptional") == "s1");
  CHECK(blow.at("controlled")[0] == "x1'^2+2*x1'*x2'^2+x2'^4+x3'^7");

  Problem zero = problem_json(
      R"({"vars":["x"],"generators":["0"],"mode":"inv-only"})");
  CHECK(run_inv(zero).at("inv").empty());

  Problem unit = problem_json(
      R"({"vars":["x"],"generators":["1+x"],"mode":"inv-only"})");
  CHECK_THROWS_AS(run_inv(unit), UnitIdeal);
}

TEST_CASE("blowup-only with an explicit center certifies Narasimhan") {
  Problem p = problem_json(R"json({
    "field": "GF(2)",
    "vars": ["x", "y", "z", "w"],
    "generators": ["x^2+y*z^3+z*w^3+y^7*w"],
    "center": {"entries": [
      {"param": "x", "a": "1/32", "divisorial": false},
      {"param": "y", "a": "1/7", "divisorial": false},
      {"param": "z", "a": "1/19", "divisorial": false},
      {"param": "w", "a": "1/15", "divisorial": false}]},
    "mode": "blowup-only"})json");
  Plan plan = Plan::from_json(nlohmann::json::parse(R"({
    "steps": [{
      "certificates": [{
        "terms": [{"mult": "1", "sym": "f"},
                  {"mult": "y", "sym": "D_y"},
                  {"mult": "z", "sym": "D_z"}],
        "equals": "x^2+y*z^3"}],
      "probe_box": [[0,1],[0,1],[0,1],[0,1]],
      "assert_codimension": true}]})"));
  nlohmann::json out = run_blowup(p, plan);
  CHECK(out.at("homogeneous") == true);
  CHECK(out.at("transform_identity") == true);
  CHECK(out.at("admissible") == true);
  CHECK(out.at("certificates")[0].at("holds") == true);
  CHECK(out.at("certified") == true);
  CHECK(!out.at("probe_points").empty());
  CHECK(out.at("codimension").at("verified") == false);
  // The strict transform keeps the ambient equation, with s-exponent 64.
  CHECK(out.at("strict")[0].at("s_exp") == 64);

  // Negative control: a wrong witness fails, and "certified" with it.
  Plan bad = Plan::from_json(nlohmann::json::parse(R"({
    "steps": [{"certificates": [{
      "terms": [{"mult": "1", "sym": "f"}], "equals": "x^2"}]}]})"));
  nlohmann::json out2 = run_blowup(p, bad);
  CHECK(out2.at("certificates")[0].at("holds") == false);
  CHECK(out2.at("certified") == false);
}

TEST_CASE("milling at a non-origin marked point") {
  // f = x^2 + y is smooth at (1, -1); the invariant there is (1).
  Problem p = problem_json(R"({
    "vars": ["x", "y"], "generators": ["x^2+y"],
    "point": ["1", "-1"], "mode": "inv-only"})");
  nlohmann::json inv = run_inv(p);
  CHECK(inv.at("inv") == nlohmann::json({"1"}));
}

TEST_CASE("divisor flags only bind where the component passes through") {
  // x1 is declared divisorial but the marked point has x1 = 1, so the
  // component misses the point and x1 counts as free there.
  Problem at_origin = problem_json(R"({
    "vars": ["x1", "x2"], "divisors": ["x1"],
    "generators": ["x1^2+x2^3"], "mode": "inv-only"})");
  CHECK(run_inv(at_origin).at("inv") == nlohmann::json({"2+", "3"}));

  Problem off = problem_json(R"({
    "vars": ["x1", "x2"], "divisors": ["x1"],
    "generators": ["(x1-1)^2+x2^3"], "point": ["1", "0"],
    "mode": "inv-only"})");
  CHECK(run_inv(off).at("inv") == nlohmann::json({"2", "3"}));
}

TEST_CASE("max-steps guard raises the documented error") {
  Problem p = problem_json(R"({
    "vars": ["x", "y"], "generators": ["x^2+y^3"],
    "mode": "principalize", "options": {"max_steps": 0}})");
  try {
    run_principalize(p, Plan{});
    CHECK(false);
  } catch (const MaxStepsExceeded& e) {
    CHECK(e.exit_code() == ExitCode::MaxStepsExceeded);
  }
}

TEST_CASE("toric entry point") {
  nlohmann::json input = nlohmann::json::parse(R"({
    "fan": {"dim": 2, "rays": [[1,0],[0,1]], "cones": [[0,1]]},
    "v": [2, 3]})");
  nlohmann::json out = run_toric(input);
  CHECK(out.at("star").at("cones").size() == 2);
  CHECK(out.at("cobordism").at("consistent") == true);
  CHECK(out.at("cobordism").at("tau")[2] == nlohmann::json({2, 3, 1}));
}

TEST_CASE("trace JSON is deterministic and well-formed") {
  Problem p = problem_json(R"({
    "vars": ["x1", "x2", "x3"], "divisors": ["x1", "x2"],
    "generators": ["(x1+x2^2)^2+x3^7"], "mode": "principalize"})");
  Trace a = run_principalize(p, Plan{});
  Trace b = run_principalize(p, Plan{});
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.steps[0].contains("torus"));
  CHECK(a.steps[0].contains("torus_linear"));
  CHECK(a.steps[0].at("inv") == nlohmann::json({"2+", "4+", "7"}));
}

TEST_CASE("the shipped corpus is well-formed") {
  // The full property suites run in the dedicated property_suite binary and
  // behind `cobord verify`; here we only sanity-check the corpus itself.
  auto corpus = regression_corpus();
  CHECK(corpus.size() >= 5);
  for (const auto& p : corpus) {
    RingPtr ring = p.ring();
    CHECK(!p.parsed_generators(ring).empty());
    CHECK(run_inv(p).contains("inv"));
  }
}
