#include "doctest.h"

#include "cobord/cobordant.hpp"
#include "cobord/errors.hpp"
#include "cobord/parser.hpp"

using namespace cobord;

namespace {

RingPtr qring(std::vector<std::string> vars) {
  return make_ring(Field::rationals(), std::move(vars));
}

Center coord_center(const RingPtr& ring,
                    std::vector<std::pair<std::string, Rat>> entries,
                    std::vector<std::string> divisorial = {}) {
  std::vector<CenterEntry> es;
  for (auto& [name, a] : entries) {
    bool div = false;
    for (const auto& d : divisorial) div = div || d == name;
    es.push_back({parse_polynomial(name, ring), a, div});
  }
  return Center(ring, std::move(es));
}

}  // namespace

TEST_CASE("chart of the SNC-pair center") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  Center c = coord_center(ring, {{"x1", Rat(2)}, {"x2", Rat(4)}, {"x3", Rat(7)}},
                          {"x1", "x2"});
  BlowupChart chart =
      build_chart(c, DivisorSet::of_variables({"x1", "x2"}));
  CHECK(chart.w_total() == Rat(28));
  CHECK(chart.chart_ring()->vars ==
        std::vector<std::string>{"s1", "x1'", "x2'", "x3'"});
  CHECK(chart.weights() == std::vector<long>{-1, 14, 7, 4});
  CHECK(chart.vertex_vars() == std::vector<std::size_t>{1, 2, 3});

  // Divisors: strict transforms of E1, E2 plus the new exceptional.
  const auto& comps = chart.divisors().components();
  REQUIRE(comps.size() == 3);
  CHECK(comps[0].var == "x1'");
  CHECK(!comps[0].exceptional);
  CHECK(comps[2].var == "s1");
  CHECK(comps[2].exceptional);

  nlohmann::json j = chart.to_json();
  CHECK(j.at("exceptional") == "s1");
  CHECK(j.at("vars")[0].at("name") == "x1'");
  CHECK(j.at("vars")[0].at("weight") == 14);
  CHECK(j.at("torus")[0] == nlohmann::json({-1, 14, 7, 4}));
}

TEST_CASE("smooth center gives the ordinary blow-up cobordism") {
  RingPtr ring = qring({"x", "y"});
  Center c = coord_center(ring, {{"x", Rat(1)}, {"y", Rat(1)}});
  BlowupChart chart = build_chart(c, DivisorSet());
  CHECK(chart.w_total() == Rat(1));
  CHECK(chart.weights() == std::vector<long>{-1, 1, 1});
  CHECK(exceptional_principality_check(c, chart));
}

TEST_CASE("chart of the two-block center") {
  RingPtr ring = qring({"x1", "x2", "x3", "x4", "x5", "x6"});
  Center c = coord_center(ring, {{"x1", Rat(3)},
                                 {"x2", Rat(3)},
                                 {"x3", Rat(3)},
                                 {"x4", Rat(4)},
                                 {"x5", Rat(4)},
                                 {"x6", Rat(4)}});
  BlowupChart chart = build_chart(c, DivisorSet());
  CHECK(chart.w_total() == Rat(12));
  CHECK(chart.weights() == std::vector<long>{-1, 4, 4, 4, 3, 3, 3});
}

TEST_CASE("full transform factors the maximal s-power") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  Center c = coord_center(ring, {{"x1", Rat(2)}, {"x2", Rat(3)}, {"x3", Rat(5)}});
  BlowupChart chart = build_chart(c, DivisorSet());
  // Diagonal: every term reaches s^{w_A}.
  LaurentPoly t = full_transform(
      parse_polynomial("x1^2+x2^3+x3^5", ring), chart);
  CHECK(t.s_offset == 30);
  CHECK(t.poly ==
        parse_polynomial("x1'^2+x2'^3+x3'^5", chart.chart_ring()));

  Center cx = coord_center(ring, {{"x1", Rat(2)}});
  BlowupChart chx = build_chart(cx, DivisorSet());
  LaurentPoly tu = full_transform(parse_polynomial("x2", ring), chx);
  CHECK(tu.s_offset == 0);
  CHECK(tu.poly.to_string() == "x2");
  LaurentPoly tx = full_transform(parse_polynomial("x1", ring), chx);
  CHECK(tx.s_offset == 1);
  CHECK(tx.poly.to_string() == "x1'");
}

TEST_CASE("controlled transform") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  SUBCASE("SNC pair") {
    Center c = coord_center(ring, {{"x1", Rat(2)}, {"x2", Rat(4)}, {"x3", Rat(7)}},
                            {"x1", "x2"});
    BlowupChart chart = build_chart(c, DivisorSet::of_variables({"x1", "x2"}));
    Polynomial f = parse_polynomial("(x1+x2^2)^2+x3^7", ring);
    CHECK(controlled_transform(f, chart) ==
          parse_polynomial("(x1'+x2'^2)^2+x3'^7", chart.chart_ring()));
  }
  SUBCASE("diagonal keeps its formula") {
    Center c = coord_center(ring, {{"x1", Rat(2)}, {"x2", Rat(3)}, {"x3", Rat(5)}});
    BlowupChart chart = build_chart(c, DivisorSet());
    Polynomial f = parse_polynomial("x1^2+x2^3+x3^5", ring);
    CHECK(controlled_transform(f, chart) ==
          parse_polynomial("x1'^2+x2'^3+x3'^5", chart.chart_ring()));
  }
  SUBCASE("non-admissible input is rejected") {
    Center c = coord_center(ring, {{"x1", Rat(2)}});
    BlowupChart chart = build_chart(c, DivisorSet());
    CHECK_THROWS_AS(controlled_transform(parse_polynomial("x1", ring), chart),
                    NonAdmissible);
  }
}

TEST_CASE("strict transform") {
  RingPtr ring = qring({"x", "y"});
  Center c = coord_center(ring, {{"x", Rat(2)}, {"y", Rat(3)}});
  BlowupChart chart = build_chart(c, DivisorSet());
  auto [p1, e1] = strict_transform(parse_polynomial("x^2+y^3", ring), chart);
  CHECK(e1 == 6);
  CHECK(p1 == parse_polynomial("x'^2+y'^3", chart.chart_ring()));
  auto [p2, e2] = strict_transform(parse_polynomial("x^2+y^3+y^4", ring), chart);
  CHECK(e2 == 6);
  CHECK(p2 == parse_polynomial("x'^2+y'^3+s1^2*y'^4", chart.chart_ring()));
  auto [p3, e3] = strict_transform(parse_polynomial("y", ring),
                                   build_chart(coord_center(ring, {{"x", Rat(2)}}),
                                               DivisorSet()));
  CHECK(e3 == 0);
  CHECK(p3.to_string() == "y");
}

TEST_CASE("transform_algebra maps generators at their own grades") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  Center c = coord_center(ring, {{"x1", Rat(2)}, {"x2", Rat(4)}, {"x3", Rat(7)}});
  BlowupChart chart = build_chart(c, DivisorSet());
  SUBCASE("trivial algebra stays trivial") {
    ReesAlgebra out = transform_algebra(ReesAlgebra::trivial(ring), chart);
    CHECK(out.is_trivial());
  }
  SUBCASE("the center transforms to the primed center") {
    ReesAlgebra A(ring, {{parse_polynomial("x1", ring), Rat(1, 2)},
                         {parse_polynomial("x2", ring), Rat(1, 4)},
                         {parse_polynomial("x3", ring), Rat(1, 7)}});
    ReesAlgebra out = transform_algebra(A, chart);
    CHECK(out.generators()[0].poly.to_string() == "x1'");
    CHECK(out.generators()[1].poly.to_string() == "x2'");
    CHECK(out.generators()[2].poly.to_string() == "x3'");
    CHECK(out.generators()[0].grade == Rat(1, 2));
  }
}

TEST_CASE("exceptional principality check and its negative control") {
  RingPtr ring = qring({"x", "y"});
  Center c = coord_center(ring, {{"x", Rat(2)}, {"y", Rat(3)}});
  BlowupChart chart = build_chart(c, DivisorSet());
  CHECK(exceptional_principality_check(c, chart));
  BlowupChart corrupted = chart;
  corrupted.corrupt_weight(1, 0);
  CHECK(!exceptional_principality_check(c, corrupted));
}

TEST_CASE("controlled transform needs integral twists") {
  RingPtr ring = qring({"x"});
  Center c = coord_center(ring, {{"x", Rat(2)}});
  BlowupChart chart = build_chart(c, DivisorSet());
  CHECK_THROWS_AS(
      controlled_transform(parse_polynomial("x^2", ring), chart, Rat(1, 3)),
      NonIntegralWeights);
}

TEST_CASE("divisor policy controls prior exceptionals") {
  RingPtr ring = qring({"x", "y"});
  DivisorSet divisors;
  divisors.add({"E1", "x", false});
  divisors.add({"exc0", "y", true});
  Center c = coord_center(ring, {{"x", Rat(2)}}, {"x"});
  BlowupChart total = build_chart(c, divisors, {}, "s1", DivisorPolicy::Total);
  BlowupChart strict = build_chart(c, divisors, {}, "s1", DivisorPolicy::Strict);
  auto names = [](const BlowupChart& ch) {
    std::vector<std::string> out;
    for (const auto& comp : ch.divisors().components()) out.push_back(comp.name);
    return out;
  };
  CHECK(names(total) == std::vector<std::string>{"E1", "exc0", "s1"});
  CHECK(names(strict) == std::vector<std::string>{"E1", "s1"});
}

TEST_CASE("torus rows inherit positionally and stack") {
  RingPtr ring = qring({"x", "y"});
  Center c1 = coord_center(ring, {{"x", Rat(2)}, {"y", Rat(3)}});
  BlowupChart ch1 = build_chart(c1, DivisorSet());
  REQUIRE(ch1.torus_rows().size() == 1);

  // Second blow-up on the chart (center: the strict-transform coordinates).
  RingPtr r2 = ch1.chart_ring();
  Center c2(r2, {{Polynomial::variable(r2, 1), Rat(1), false},
                 {Polynomial::variable(r2, 2), Rat(1), false}});
  BlowupChart ch2 =
      build_chart(c2, ch1.divisors(), ch1.torus_rows(), "s2");
  REQUIRE(ch2.torus_rows().size() == 2);
  // Row 1 inherited: s2 gets 0, x'' keeps the old weight of x'.
  CHECK(ch2.torus_rows()[0] == std::vector<long>{0, -1, 3, 2});
  CHECK(ch2.torus_rows()[1] == std::vector<long>{-1, 0, 1, 1});
}
