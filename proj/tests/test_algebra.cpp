#include "doctest.h"

#include <climits>

#include "cobord/errors.hpp"
#include "cobord/jet.hpp"
#include "cobord/parser.hpp"

using namespace cobord;

namespace {
RingPtr qring(std::vector<std::string> vars) {
  return make_ring(Field::rationals(), std::move(vars));
}
}  // namespace

TEST_CASE("parser expands and canonicalizes") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  Polynomial f = parse_polynomial("(x1+x2^2)^2+x3^7", ring);
  CHECK(f.to_string() == "x1^2+2*x1*x2^2+x2^4+x3^7");
  CHECK(parse_polynomial("x1^2+2*x1*x2^2+x2^4+x3^7", ring) == f);
}

TEST_CASE("parser over a prime field reduces coefficients") {
  RingPtr ring = make_ring(Field::prime(2), {"x", "y", "z"});
  Polynomial f = parse_polynomial("x^2+y*z", ring);
  CHECK(f.to_string() == "x^2+y*z");
  CHECK(parse_polynomial("x^2+2*y*z", ring).to_string() == "x^2");
}

TEST_CASE("parser builds the Narasimhan quartic over F2") {
  RingPtr ring = make_ring(Field::prime(2), {"x", "y", "z", "w"});
  Polynomial f = parse_polynomial("x^2+y*z^3+z*w^3+y^7*w", ring);
  CHECK(f.num_terms() == 4);
  CHECK(f.total_degree() == 8);
}

TEST_CASE("parser errors") {
  RingPtr ring = qring({"x", "y"});
  CHECK_THROWS_AS(parse_polynomial("x+*y", ring), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("x+", ring), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("(x+y", ring), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("x^y", ring), SyntaxError);
  CHECK_THROWS_AS(parse_polynomial("x+q", ring), UnknownVariable);
  // Implicit multiplication is disallowed.
  CHECK_THROWS_AS(parse_polynomial("2x", ring), SyntaxError);
  try {
    parse_polynomial("x&y", ring);
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 1);
    CHECK(e.exit_code() == ExitCode::ParseError);
  }
  RingPtr f2 = make_ring(Field::prime(2), {"x"});
  CHECK_THROWS_AS(parse_polynomial("1/2", f2), BadCharacteristic);
  CHECK_NOTHROW(parse_polynomial("1/3", f2));
}

TEST_CASE("divided-power derivatives") {
  RingPtr ring = qring({"x", "y"});
  Polynomial f = parse_polynomial("x^3+x^2*y", ring);
  CHECK(f.derivative(0).to_string() == "3*x^2+2*x*y");
  Monomial x2(2);
  x2[0] = 2;
  CHECK(parse_polynomial("x^3", ring).derivative(x2).to_string() == "3*x");

  RingPtr ns = make_ring(Field::prime(2), {"x", "y", "z", "w"});
  Polynomial g = parse_polynomial("x^2+y*z^3+z*w^3+y^7*w", ns);
  CHECK(g.derivative(1) == parse_polynomial("z^3+y^6*w", ns));
}

TEST_CASE("order at the origin") {
  RingPtr ring = qring({"x", "y", "z"});
  CHECK(Jet(parse_polynomial("x^3+y^4+z^5", ring), 10).order_at_origin() == 3);
  CHECK(Jet(parse_polynomial("1+x", ring), 10).order_at_origin() == 0);
  CHECK(Jet(parse_polynomial("x^2*y^3", ring), 10).order_at_origin() == 5);
}

TEST_CASE("zero jets: exact zero vs truncated zero") {
  RingPtr ring = qring({"x"});
  Jet zero(Polynomial::zero(ring), 4);
  CHECK(zero.order_at_origin() == LONG_MAX);
  Jet chopped(parse_polynomial("x^6", ring), 4);  // vanishes mod precision
  CHECK(chopped.is_zero());
  CHECK(!chopped.exact());
  CHECK_THROWS_AS(chopped.order_at_origin(), PrecisionExhausted);
}

TEST_CASE("substitution through a coordinate change") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  // New coordinate u := x1 + x2^2 in place of x1.
  std::vector<Polynomial> new_in_old = {
      parse_polynomial("x1+x2^2", ring), Polynomial::variable(ring, 1),
      Polynomial::variable(ring, 2)};
  CoordinateChange change = CoordinateChange::make(ring, ring, new_in_old, 10);
  Polynomial f = parse_polynomial("(x1+x2^2)^2+x3^7", ring);
  Jet g = substitute(f, change);
  CHECK(g.poly() == parse_polynomial("x1^2+x3^7", ring));

  CoordinateChange id = CoordinateChange::identity(ring, 10);
  CHECK(substitute(f, id).poly() == f);
}

TEST_CASE("composing a change with its inverse is the identity mod N") {
  RingPtr ring = qring({"x", "y"});
  std::vector<Polynomial> new_in_old = {parse_polynomial("x+y^2+x*y", ring),
                                        parse_polynomial("y+x^2", ring)};
  long n = 7;
  CoordinateChange change = CoordinateChange::make(ring, ring, new_in_old, n);
  CoordinateChange inverse = invert_change(change, n);
  for (std::size_t v = 0; v < 2; ++v) {
    Polynomial xi = Polynomial::variable(ring, v);
    Jet once = substitute(xi, change, n);
    Jet back = substitute(once.poly(), inverse, n);
    CHECK(back.poly().truncated(n) == xi);
  }
}

TEST_CASE("formal inversion examples") {
  RingPtr ring = qring({"x", "y"});
  SUBCASE("triangular change inverts exactly") {
    std::vector<Polynomial> fwd = {parse_polynomial("x+y^2", ring),
                                   Polynomial::variable(ring, 1)};
    CoordinateChange c = CoordinateChange::make(ring, ring, fwd, 8);
    CHECK(c.old_in_new()[0] == parse_polynomial("x-y^2", ring));
    CHECK(c.exact_inverse());
  }
  SUBCASE("linear change inverts by the inverse matrix") {
    std::vector<Polynomial> fwd = {parse_polynomial("x+y", ring),
                                   parse_polynomial("y", ring)};
    CoordinateChange c = CoordinateChange::make(ring, ring, fwd, 5);
    CHECK(c.old_in_new()[0] == parse_polynomial("x-y", ring));
    CHECK(c.old_in_new()[1] == parse_polynomial("y", ring));
  }
  SUBCASE("series inversion of u = x + x^2") {
    RingPtr rx = qring({"x"});
    std::vector<Polynomial> fwd = {parse_polynomial("x+x^2", rx)};
    CoordinateChange c = CoordinateChange::make(rx, rx, fwd, 4);
    CHECK(c.old_in_new()[0] == parse_polynomial("x-x^2+2*x^3-5*x^4", rx));
    CHECK(!c.exact_inverse());
    // Composition check to degree 4.
    Polynomial composed = fwd[0].substituted(rx, c.old_in_new(), 4);
    CHECK(composed == Polynomial::variable(rx, 0));
  }
  SUBCASE("singular linear part is rejected") {
    std::vector<Polynomial> fwd = {parse_polynomial("x+y", ring),
                                   parse_polynomial("x+y", ring)};
    CHECK_THROWS_AS(CoordinateChange::make(ring, ring, fwd, 4),
                    NonInvertibleLinearPart);
    std::vector<Polynomial> off = {parse_polynomial("x+1", ring),
                                   parse_polynomial("y", ring)};
    CHECK_THROWS_AS(CoordinateChange::make(ring, ring, off, 4),
                    NonInvertibleLinearPart);
  }
}

TEST_CASE("restriction to a vanishing set") {
  RingPtr ring = qring({"x1", "x2", "x3"});
  Polynomial f = parse_polynomial("x1^2+x2^4+x3^7", ring);
  CHECK(f.restrict_zero({0}) == parse_polynomial("x2^4+x3^7", ring));
  CHECK(f.restrict_zero({}) == f);
  // Example-11 step: restricting the diagonal to the first contact block.
  Polynomial g = parse_polynomial("x1^2+x2^3+x3^5", ring);
  CHECK(g.restrict_zero({0}) == parse_polynomial("x2^3+x3^5", ring));
}

TEST_CASE("polynomial utilities used by the milling machinery") {
  RingPtr ring = qring({"x", "y"});
  Polynomial f = parse_polynomial("2*x^2*y+4*x*y^2", ring);
  CHECK(f.monic().to_string() == "x^2*y+2*x*y^2");
  CHECK(f.monomial_content().total_degree() == 2);  // xy divides everything
  Polynomial h = parse_polynomial("x+y^2", ring);
  auto q = parse_polynomial("x*y+y^3", ring).try_divide(h);
  REQUIRE(q);
  CHECK(*q == parse_polynomial("y", ring));
  CHECK(!parse_polynomial("x*y+y^2", ring).try_divide(h));
}

TEST_CASE("translation moves the marked point to the origin") {
  RingPtr ring = qring({"x", "y"});
  Polynomial f = parse_polynomial("x^2+y", ring);
  std::vector<Coeff> p = {Coeff(ring->field, 1), Coeff(ring->field, -1)};
  Polynomial g = f.translated(p);
  CHECK(g == parse_polynomial("(x+1)^2+(y-1)", ring));
  CHECK(g.constant_term().is_zero());  // (1, -1) lies on V(f)
}
