#include "doctest.h"

#include "cobord/errors.hpp"
#include "cobord/parser.hpp"
#include "cobord/rees.hpp"

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

TEST_CASE("valuation of monomials and sums") {
  RingPtr ring = qring({"x", "y"});
  Center c = coord_center(ring, {{"x", Rat(2)}, {"y", Rat(3)}});
  MonomialValuation val = c.valuation(10);
  auto nu = [&](const std::string& s) {
    return valuation_of(Jet(parse_polynomial(s, ring), 10), val.weights);
  };
  CHECK(*nu("x*y^2") == Rat(7, 6));
  CHECK(*nu("1") == Rat(0));
  CHECK(*nu("x+y") == Rat(1, 3));
  CHECK(!valuation_of(Jet(Polynomial::zero(ring), 10), val.weights));
  Jet chopped(parse_polynomial("x^20", ring), 10);
  CHECK_THROWS_AS(valuation_of(chopped, val.weights), PrecisionExhausted);
}

TEST_CASE("gradation ideal generators") {
  RingPtr ring = qring({"x", "y"});
  Center c = coord_center(ring, {{"x", Rat(2)}, {"y", Rat(3)}});
  auto strs = [](const std::vector<Polynomial>& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps) out.push_back(p.to_string());
    return out;
  };
  CHECK(strs(gradation_generators(c, Rat(1), 5)) ==
        std::vector<std::string>{"x^2", "x*y^2", "y^3"});
  CHECK(strs(gradation_generators(c, Rat(0), 5)) ==
        std::vector<std::string>{"1"});
  Center unit = coord_center(ring, {{"x", Rat(1)}});
  CHECK(strs(gradation_generators(unit, Rat(1), 5)) ==
        std::vector<std::string>{"x"});
}

TEST_CASE("admissibility of the SNC-pair center") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  ReesAlgebra R = ReesAlgebra::of_ideal(
      ring, {parse_polynomial("(x1+x2^2)^2+x3^7", ring)});
  Center c = coord_center(ring, {{"x1", Rat(2)}, {"x2", Rat(4)}, {"x3", Rat(7)}},
                          {"x1", "x2"});
  CHECK(is_admissible(R, c, 28));

  ReesAlgebra Rx = ReesAlgebra::of_ideal(ring, {parse_polynomial("x1", ring)});
  Center cx = coord_center(ring, {{"x1", Rat(2)}});
  CHECK(!is_admissible(Rx, cx, 12));
  ReesAlgebra Rx2 = ReesAlgebra::of_ideal(ring, {parse_polynomial("x1^2", ring)});
  CHECK(is_admissible(Rx2, cx, 12));
}

TEST_CASE("admissibility through a non-coordinate parameter") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  // Without the divisor constraint, (x1+x2^2 : 2),(x3 : 7) is admissible.
  std::vector<CenterEntry> es = {
      {parse_polynomial("x1+x2^2", ring), Rat(2), false},
      {parse_polynomial("x3", ring), Rat(7), false}};
  Center c(ring, es);
  ReesAlgebra R = ReesAlgebra::of_ideal(
      ring, {parse_polynomial("(x1+x2^2)^2+x3^7", ring)});
  CHECK(is_admissible(R, c, 28));
  auto nu = valuation_of(parse_polynomial("(x1+x2^2)^2+x3^7", ring), c, 28);
  REQUIRE(nu);
  CHECK(*nu == Rat(1));
}

TEST_CASE("rescaling grades") {
  RingPtr ring = qring({"x"});
  ReesAlgebra R(ring, {{parse_polynomial("x", ring), Rat(1)},
                       {parse_polynomial("x^2", ring), Rat(2, 3)}});
  ReesAlgebra S = R.rescaled(Rat(3));
  CHECK(S.generators()[0].grade == Rat(3));
  CHECK(S.generators()[1].grade == Rat(2));
  ReesAlgebra T = R.rescaled(Rat(1));
  CHECK(T.generators()[0].grade == Rat(1));
  CHECK(T.generators()[1].grade == Rat(2, 3));
}

TEST_CASE("SNC-pair center rescaled by w_A matches the blow-up exponents") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  // The center as a Rees algebra: x_i at grade 1/a_i.
  ReesAlgebra A(ring, {{parse_polynomial("x1", ring), Rat(1, 2)},
                       {parse_polynomial("x2", ring), Rat(1, 4)},
                       {parse_polynomial("x3", ring), Rat(1, 7)}});
  Center c = coord_center(ring, {{"x1", Rat(2)}, {"x2", Rat(4)}, {"x3", Rat(7)}});
  CHECK(c.w_total() == Rat(28));
  ReesAlgebra B = A.rescaled(c.w_total());
  CHECK(B.generators()[0].grade == Rat(14));
  CHECK(B.generators()[1].grade == Rat(7));
  CHECK(B.generators()[2].grade == Rat(4));
}

TEST_CASE("grading denominator w_R") {
  RingPtr ring = qring({"x"});
  ReesAlgebra R(ring, {{parse_polynomial("x", ring), Rat(1)},
                       {parse_polynomial("x", ring), Rat(2, 3)}});
  CHECK(R.grading_denominator() == Rat(3));
  CHECK(ReesAlgebra::trivial(ring).grading_denominator() == Rat(1));
}

TEST_CASE("center invariants and normal form") {
  RingPtr ring = qring({"x", "y", "z"});
  SUBCASE("entries sort ascending by a") {
    Center c = coord_center(ring, {{"z", Rat(7)}, {"x", Rat(2)}});
    CHECK(c.entries()[0].a == Rat(2));
    CHECK(c.entries()[1].a == Rat(7));
  }
  SUBCASE("same-a block reduces to reduced echelon parameters") {
    std::vector<CenterEntry> es = {
        {parse_polynomial("x+y", ring), Rat(2), false},
        {parse_polynomial("y", ring), Rat(2), false}};
    Center c = Center(ring, es).normal_form();
    CHECK(c.entries()[0].param == parse_polynomial("x", ring));
    CHECK(c.entries()[1].param == parse_polynomial("y", ring));
  }
  SUBCASE("cross-block reduction eliminates earlier pivots only") {
    std::vector<CenterEntry> es = {
        {parse_polynomial("x", ring), Rat(2), false},
        {parse_polynomial("x+y", ring), Rat(3), false}};
    Center c = Center(ring, es).normal_form();
    CHECK(c.entries()[1].param == parse_polynomial("y", ring));
  }
  SUBCASE("dependent linear parts are rejected") {
    std::vector<CenterEntry> es = {
        {parse_polynomial("x+y", ring), Rat(2), false},
        {parse_polynomial("x+y+x^2", ring), Rat(3), false}};
    CHECK_THROWS_AS(Center(ring, es).normal_form(), Error);
  }
  SUBCASE("zero weight is rejected") {
    CHECK_THROWS_AS(coord_center(ring, {{"x", Rat(0)}}), Error);
  }
}

TEST_CASE("center JSON round trip") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  Center c = coord_center(ring, {{"x1", Rat(2)}, {"x2", Rat(4)}, {"x3", Rat(7)}},
                          {"x1", "x2"});
  nlohmann::json j = c.to_json();
  CHECK(j.at("entries")[0].at("param") == "x1");
  CHECK(j.at("entries")[0].at("a") == "2");
  CHECK(j.at("entries")[0].at("divisorial") == true);
  Center back = Center::from_json(j, ring);
  CHECK(back == c);
}
