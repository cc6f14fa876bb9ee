#include "cobord/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <optional>
#include <random>
#include <sstream>

#include "cobord/errors.hpp"
#include "cobord/graded.hpp"
#include "cobord/parser.hpp"

namespace cobord {
namespace {

using Rng = std::mt19937_64;
using Fail = std::optional<std::string>;

long rand_int(Rng& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Coeff rand_coeff(const RingPtr& ring, Rng& rng, bool nonzero) {
  if (ring->field.is_prime_field()) {
    long p = ring->field.characteristic();
    long r = rand_int(rng, nonzero ? 1 : 0, p - 1);
    return Coeff(ring->field, r);
  }
  long num = rand_int(rng, -6, 6);
  if (nonzero && num == 0) num = 1 + rand_int(rng, 0, 4);
  long den = rand_int(rng, 1, 4);
  return Coeff(ring->field, Rat(num, den));
}

Monomial rand_monomial(std::size_t nvars, Rng& rng, long max_deg) {
  Monomial m(nvars);
  long deg = rand_int(rng, 0, max_deg);
  for (long i = 0; i < deg; ++i)
    m[static_cast<std::size_t>(rand_int(rng, 0, nvars - 1))] += 1;
  return m;
}

Polynomial rand_poly(const RingPtr& ring, Rng& rng, long max_deg,
                     int max_terms, bool nonzero) {
  Polynomial p(ring);
  int terms = static_cast<int>(rand_int(rng, nonzero ? 1 : 0, max_terms));
  for (int i = 0; i < terms; ++i)
    p.add_term(rand_monomial(ring->nvars(), rng, max_deg),
               rand_coeff(ring, rng, true));
  if (nonzero && p.is_zero())
    p.add_term(rand_monomial(ring->nvars(), rng, max_deg),
               Coeff::one(ring->field));
  return p;
}

std::vector<std::string> poly_strings(const std::vector<Polynomial>& ps) {
  std::vector<std::string> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i];
  }
  return s;
}

bool is_torus_homogeneous(const Polynomial& g, const std::vector<long>& row) {
  std::optional<long> w;
  for (const auto& [m, c] : g.terms()) {
    long t = 0;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      t += static_cast<long>(m[i]) * row[i];
    if (!w) w = t;
    if (*w != t) return false;
  }
  return true;
}

Problem make_problem(std::vector<std::string> vars,
                     std::vector<std::string> divisors,
                     std::vector<std::string> gens, Mode mode) {
  Problem p;
  p.vars = std::move(vars);
  p.divisor_vars = std::move(divisors);
  p.generators = std::move(gens);
  p.mode = mode;
  return p;
}

// ---------------------------------------------------------------------------
// algebra properties
// ---------------------------------------------------------------------------

Fail check_ring_axioms(Rng& rng) {
  for (const Field& field : {Field::rationals(), Field::prime(5)}) {
    RingPtr ring = make_ring(field, {"x", "y", "z"});
    for (int i = 0; i < 30; ++i) {
      Polynomial a = rand_poly(ring, rng, 4, 4, false);
      Polynomial b = rand_poly(ring, rng, 4, 4, false);
      Polynomial c = rand_poly(ring, rng, 4, 4, false);
      if ((a * b) * c != a * (b * c)) return "associativity failed";
      if (a * (b + c) != a * b + a * c) return "distributivity failed";
      if (a + b != b + a || a * b != b * a) return "commutativity failed";
    }
  }
  return std::nullopt;
}

Fail check_leibniz(Rng& rng) {
  for (const Field& field : {Field::rationals(), Field::prime(3)}) {
    RingPtr ring = make_ring(field, {"x", "y"});
    for (int i = 0; i < 30; ++i) {
      Polynomial f = rand_poly(ring, rng, 5, 4, true);
      Polynomial g = rand_poly(ring, rng, 5, 4, true);
      Polynomial lhs = (f * g).derivative(0);
      Polynomial rhs = f.derivative(0) * g + f * g.derivative(0);
      if (lhs != rhs)
        return "Leibniz failed for f=" + f.to_string() + " g=" + g.to_string();
    }
  }
  return std::nullopt;
}

Fail check_divided_power_composition(Rng& rng) {
  for (const Field& field : {Field::rationals(), Field::prime(2)}) {
    RingPtr ring = make_ring(field, {"x", "y"});
    for (int i = 0; i < 30; ++i) {
      Polynomial f = rand_poly(ring, rng, 7, 5, true);
      long a = rand_int(rng, 1, 3), b = rand_int(rng, 1, 3);
      Monomial ma(ring->nvars()), mb(ring->nvars()), mab(ring->nvars());
      ma[0] = static_cast<uint32_t>(a);
      mb[0] = static_cast<uint32_t>(b);
      mab[0] = static_cast<uint32_t>(a + b);
      Polynomial lhs = f.derivative(mb).derivative(ma);
      Coeff binom(field, Rat(mpq_class(binomial(a + b, a))));
      Polynomial rhs = f.derivative(mab).scaled(binom);
      if (lhs != rhs) return "divided-power composition failed";
    }
  }
  return std::nullopt;
}

Fail check_order_additivity(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y", "z"});
  for (int i = 0; i < 30; ++i) {
    Polynomial f = rand_poly(ring, rng, 4, 4, true);
    Polynomial g = rand_poly(ring, rng, 4, 4, true);
    if ((f * g).order_at_origin() != f.order_at_origin() + g.order_at_origin())
      return "ord(fg) != ord f + ord g";
  }
  return std::nullopt;
}

Fail check_substitution_multiplicative(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y"});
  long n = 6;
  for (int i = 0; i < 20; ++i) {
    // Random invertible origin-fixing change.
    Polynomial u = Polynomial::variable(ring, 0) +
                   rand_poly(ring, rng, 3, 2, false) *
                       Polynomial::variable(ring, 1) *
                       Polynomial::variable(ring, 1);
    Polynomial v = Polynomial::variable(ring, 1);
    CoordinateChange change;
    try {
      change = CoordinateChange::make(ring, ring, {u, v}, n);
    } catch (const NonInvertibleLinearPart&) {
      continue;
    }
    Polynomial f = rand_poly(ring, rng, 3, 3, true);
    Polynomial g = rand_poly(ring, rng, 3, 3, true);
    Jet lhs = substitute(f * g, change, n);
    Jet rhs = substitute(f, change, n) * substitute(g, change, n);
    if (lhs.poly() != rhs.poly()) return "substitute not multiplicative mod N";
  }
  return std::nullopt;
}

Fail check_parser_round_trip(Rng& rng) {
  for (const Field& field : {Field::rationals(), Field::prime(7)}) {
    RingPtr ring = make_ring(field, {"x1", "x2", "x3"});
    for (int i = 0; i < 40; ++i) {
      Polynomial f = rand_poly(ring, rng, 6, 6, false);
      Polynomial back = parse_polynomial(f.to_string(), ring);
      if (back != f)
        return "round trip failed on " + f.to_string() + " -> " + back.to_string();
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// rees properties
// ---------------------------------------------------------------------------

Center rand_center(const RingPtr& ring, Rng& rng, std::size_t max_entries) {
  std::size_t k = static_cast<std::size_t>(rand_int(rng, 1, max_entries));
  std::vector<CenterEntry> entries;
  std::vector<std::size_t> vars(ring->nvars());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
  std::shuffle(vars.begin(), vars.end(), rng);
  for (std::size_t i = 0; i < k && i < vars.size(); ++i) {
    Rat a = rand_int(rng, 0, 4) == 0 ? Rat(rand_int(rng, 1, 5), 2)
                                     : Rat(rand_int(rng, 1, 5));
    entries.push_back({Polynomial::variable(ring, vars[i]), a, false});
  }
  return Center(ring, std::move(entries));
}

Fail check_valuation_axioms(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y", "z"});
  long n = 12;
  for (int i = 0; i < 25; ++i) {
    Center c = rand_center(ring, rng, 3);
    MonomialValuation val = c.valuation(n);
    Polynomial f = rand_poly(ring, rng, 4, 4, true);
    Polynomial g = rand_poly(ring, rng, 4, 4, true);
    auto vf = valuation_of(Jet(f, n), val.weights);
    auto vg = valuation_of(Jet(g, n), val.weights);
    auto vfg = valuation_of(Jet(f * g, n), val.weights);
    if (!vf || !vg || !vfg) return "unexpected infinite valuation";
    if (*vfg != *vf + *vg) return "nu(fg) != nu(f)+nu(g)";
    auto vsum = valuation_of(Jet(f + g, n), val.weights);
    if (vsum && *vsum < std::min(*vf, *vg)) return "nu(f+g) < min";
  }
  return std::nullopt;
}

// Independent oracle: largest grid value a with some divisor monomial of m
// satisfying the comp2 inequality; and exhaustive gradation enumeration.
Rat oracle_valuation(const Monomial& m, const std::vector<Rat>& weights) {
  Rat best(0);
  // Enumerate beta <= m componentwise; the maximum of sum(beta*w) over
  // divisors of m realizes the valuation.
  std::vector<uint32_t> beta(m.nvars(), 0);
  std::function<void(std::size_t, Rat)> rec = [&](std::size_t pos, Rat acc) {
    if (pos == m.nvars()) {
      if (acc > best) best = acc;
      return;
    }
    for (uint32_t e = 0; e <= m[pos]; ++e)
      rec(pos + 1, acc + weights[pos] * Rat(static_cast<long>(e)));
  };
  rec(0, Rat(0));
  return best;
}

std::vector<Polynomial> oracle_gradation(const Center& center, const Rat& a,
                                         long bound) {
  const RingPtr& ring = center.ring();
  MonomialValuation val = center.valuation(bound + 1);
  std::vector<Monomial> all;
  Monomial cur(ring->nvars());
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long rem) {
    if (pos == ring->nvars()) {
      Rat nu(0);
      for (std::size_t i = 0; i < ring->nvars(); ++i)
        nu += val.weights[i] * Rat(static_cast<long>(cur[i]));
      bool weighted_only = true;
      for (std::size_t i = 0; i < ring->nvars(); ++i)
        if (cur[i] > 0 && val.weights[i].is_zero()) weighted_only = false;
      if (nu >= a && weighted_only) all.push_back(cur);
      return;
    }
    for (long e = 0; e <= rem; ++e) {
      cur[pos] = static_cast<uint32_t>(e);
      rec(pos + 1, rem - e);
    }
    cur[pos] = 0;
  };
  rec(0, bound);
  std::vector<Polynomial> minimal;
  for (const auto& m : all) {
    bool redundant = false;
    for (const auto& d : all)
      if (!(d == m) && d.divides(m)) redundant = true;
    if (!redundant)
      minimal.push_back(Polynomial::of_monomial(ring, m, Coeff::one(ring->field)));
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const Polynomial& x, const Polynomial& y) {
              return x.terms().begin()->first < y.terms().begin()->first;
            });
  return minimal;
}

Fail check_valuation_oracle(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x1", "x2", "x3", "x4"});
  for (int i = 0; i < 40; ++i) {
    Center c = rand_center(ring, rng, 4);
    MonomialValuation val = c.valuation(10);
    Monomial m = rand_monomial(ring->nvars(), rng, 8);
    Jet jm(Polynomial::of_monomial(ring, m, Coeff::one(ring->field)), 9);
    auto nu = valuation_of(jm, val.weights);
    if (!nu) return "finite monomial got infinite valuation";
    if (*nu != oracle_valuation(m, val.weights))
      return "valuation mismatch vs oracle";
  }
  for (int i = 0; i < 12; ++i) {
    Center c = rand_center(ring, rng, 3);
    Rat a(rand_int(rng, 1, 3));
    long bound = 7;
    auto got = gradation_generators(c, a, bound);
    auto want = oracle_gradation(c, a, bound);
    if (poly_strings(got) != poly_strings(want))
      return "gradation generators mismatch: got {" + join(poly_strings(got)) +
             "} want {" + join(poly_strings(want)) + "}";
  }
  return std::nullopt;
}

Fail check_gradation_minimality(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y", "z"});
  for (int i = 0; i < 12; ++i) {
    Center c = rand_center(ring, rng, 3);
    Rat a(rand_int(rng, 1, 2));
    MonomialValuation val = c.valuation(8);
    auto gens = gradation_generators(c, a, 7);
    for (const auto& g : gens) {
      auto nu = valuation_of(Jet(g, 8), val.weights);
      if (!nu || *nu < a) return "gradation generator below grade";
      for (const auto& h : gens)
        if (&g != &h && h.terms().begin()->first.divides(g.terms().begin()->first))
          return "gradation generator not minimal";
    }
  }
  return std::nullopt;
}

Fail check_admissibility_rescale(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y"});
  for (int i = 0; i < 20; ++i) {
    Center c = rand_center(ring, rng, 2);
    std::vector<GradedElement> gens;
    gens.push_back({rand_poly(ring, rng, 4, 3, true), Rat(rand_int(rng, 1, 2))});
    ReesAlgebra R(ring, gens);
    Rat w0(rand_int(rng, 1, 4), rand_int(rng, 1, 3));
    bool before = is_admissible(R, c, 12);
    std::vector<CenterEntry> rescaled_entries;
    for (const auto& e : c.entries())
      rescaled_entries.push_back({e.param, e.a / w0, e.divisorial});
    Center c2(ring, rescaled_entries);
    bool after = is_admissible(R.rescaled(w0), c2, 12);
    if (before != after) return "admissibility not invariant under rescaling";
  }
  return std::nullopt;
}

Fail check_admissibility_permutation(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y", "z"});
  for (int i = 0; i < 15; ++i) {
    Center c = rand_center(ring, rng, 3);
    ReesAlgebra R =
        ReesAlgebra::of_ideal(ring, {rand_poly(ring, rng, 4, 4, true)});
    std::vector<std::size_t> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> pvars(ring->nvars());
    for (std::size_t v = 0; v < perm.size(); ++v) pvars[perm[v]] = ring->vars[v];
    RingPtr ring2 = make_ring(ring->field, pvars);
    std::vector<CenterEntry> entries2;
    for (const auto& e : c.entries())
      entries2.push_back({e.param.permuted(ring2, perm), e.a, e.divisorial});
    ReesAlgebra R2 = ReesAlgebra::of_ideal(
        ring2, {R.generators()[0].poly.permuted(ring2, perm)});
    if (is_admissible(R, c, 12) !=
        is_admissible(R2, Center(ring2, entries2), 12))
      return "admissibility not invariant under variable permutation";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// invariant properties
// ---------------------------------------------------------------------------

Fail check_qplus_order(Rng& rng) {
  std::vector<InvTuple> samples;
  for (int i = 0; i < 40; ++i) {
    std::vector<QPlus> es;
    int k = static_cast<int>(rand_int(rng, 0, 4));
    for (int j = 0; j < k; ++j)
      es.emplace_back(Rat(rand_int(rng, 0, 6), rand_int(rng, 1, 2)),
                      rand_int(rng, 0, 1) == 1);
    std::sort(es.begin(), es.end());
    samples.push_back(InvTuple(es));
  }
  for (const auto& a : samples)
    for (const auto& b : samples) {
      int rels = (a < b ? 1 : 0) + (b < a ? 1 : 0) + (a == b ? 1 : 0);
      if (rels != 1) return "totality/antisymmetry failed";
      for (const auto& c : samples)
        if (a < b && b < c && !(a < c)) return "transitivity failed";
    }
  // Infinity padding: a proper prefix dominates its extensions.
  InvTuple prefix({QPlus(Rat(1)), QPlus(Rat(1))});
  InvTuple extended({QPlus(Rat(1)), QPlus(Rat(1)), QPlus(Rat(7))});
  if (!(extended < prefix)) return "infinity padding order failed";
  return std::nullopt;
}

MillingResult mill_problem(const Problem& p, long precision_override = 0) {
  RingPtr ring = p.ring();
  auto gens = p.parsed_generators(ring);
  long prec = precision_override > 0 ? precision_override
                                     : p.working_precision(gens);
  DivisorSet divisors = DivisorSet::of_variables(p.divisor_vars);
  auto r = mill_at_point(ring, gens, divisors, p.parsed_point(ring), prec,
                         p.options.policy);
  if (!r) throw Error("corpus problem trivial at its marked point");
  return *r;
}

Fail check_milling_choice_independence(Rng& rng) {
  for (const auto& p : regression_corpus()) {
    MillingResult base = mill_problem(p);
    RingPtr ring = p.ring();
    auto gens = p.parsed_generators(ring);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::size_t> perm(ring->nvars());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<std::string> pvars(ring->nvars());
      for (std::size_t v = 0; v < perm.size(); ++v)
        pvars[perm[v]] = ring->vars[v];
      RingPtr ring2 = make_ring(ring->field, pvars);

      std::vector<Polynomial> gens2;
      for (const auto& g : gens) {
        // Unit rescaling: a nonzero constant; on small rings also a local
        // unit 1 + (something vanishing at the origin), which exercises the
        // tail reduction of the center normal form.
        Polynomial u = Polynomial::constant(ring2, rand_coeff(ring, rng, true));
        if (ring2->nvars() <= 4 && rand_int(rng, 0, 1)) {
          Polynomial tail = rand_poly(ring2, rng, 2, 2, false);
          u = u + u * (tail - Polynomial::constant(ring2, tail.constant_term()));
        }
        gens2.push_back(g.permuted(ring2, perm) * u);
      }
      std::shuffle(gens2.begin(), gens2.end(), rng);
      std::vector<bool> flags2(ring2->nvars(), false);
      for (const auto& d : p.divisor_vars) flags2[ring2->index_of(d)] = true;
      long prec = p.working_precision(gens);
      MillingResult got =
          mill_certified(ReesAlgebra::of_ideal(ring2, gens2), flags2, prec);
      if (got.inv != base.inv)
        return "invariant changed under permutation/rescaling for " +
               join(p.generators);
      // Map the center back and compare normal forms.
      std::vector<std::size_t> inv_perm(perm.size());
      for (std::size_t v = 0; v < perm.size(); ++v) inv_perm[perm[v]] = v;
      std::vector<CenterEntry> mapped;
      for (const auto& e : got.center.entries())
        mapped.push_back({e.param.permuted(ring, inv_perm), e.a, e.divisorial});
      Center back = Center(ring, mapped).normal_form();
      if (!(back == base.center))
        return "center changed under permutation/rescaling for " +
               join(p.generators) + ": " + back.to_json().dump() + " vs " +
               base.center.to_json().dump();
    }
  }
  return std::nullopt;
}

Fail check_admissibility_certificate(Rng&) {
  for (const auto& p : regression_corpus()) {
    RingPtr ring = p.ring();
    auto gens = p.parsed_generators(ring);
    MillingResult r = mill_problem(p);
    if (!is_admissible(ReesAlgebra::of_ideal(ring, gens), r.center,
                       p.working_precision(gens)))
      return "milled center not admissible for " + join(p.generators);
  }
  return std::nullopt;
}

Fail check_maximality_falsification(Rng&) {
  for (const auto& p : regression_corpus()) {
    RingPtr ring = p.ring();
    auto gens = p.parsed_generators(ring);
    long prec = p.working_precision(gens);
    MillingResult r = mill_problem(p);
    ReesAlgebra R = ReesAlgebra::of_ideal(ring, gens);
    for (std::size_t i = 0; i < r.center.entries().size(); ++i) {
      std::vector<CenterEntry> bumped = r.center.entries();
      bumped[i].a = bumped[i].a + Rat(1);
      if (is_admissible(R, Center(ring, bumped), prec))
        return "bumped center stayed admissible for " + join(p.generators);
    }
  }
  return std::nullopt;
}

Fail check_milling_stabilization(Rng&) {
  for (const auto& p : regression_corpus()) {
    RingPtr ring = p.ring();
    auto gens = p.parsed_generators(ring);
    long prec = p.working_precision(gens);
    MillingResult lo = mill_problem(p, prec);
    MillingResult hi = mill_problem(p, 2 * prec);
    if (lo.inv != hi.inv || !(lo.center == hi.center))
      return "milling unstable between N and 2N for " + join(p.generators);
  }
  return std::nullopt;
}

Fail check_ord_matches_inv_head(Rng&) {
  for (const auto& p : regression_corpus()) {
    RingPtr ring = p.ring();
    auto gens = p.parsed_generators(ring);
    long prec = p.working_precision(gens);
    MillingResult r = mill_problem(p);
    auto o = ord_rees(ReesAlgebra::of_ideal(ring, gens), prec);
    if (!o) return "infinite order on corpus input";
    if (r.inv.entries().empty() || r.inv.entries()[0].value != *o)
      return "ord_rees != first invariant entry for " + join(p.generators);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// cobordant properties
// ---------------------------------------------------------------------------

struct ChartSetup {
  RingPtr ring;
  std::vector<Polynomial> gens;  // rewritten in completed coordinates
  Center center;                 // coordinate form
  BlowupChart chart;
  MillingResult milled;
  long precision = 0;
};

ChartSetup chart_for_problem(const Problem& p) {
  ChartSetup s;
  s.ring = p.ring();
  auto gens = p.parsed_generators(s.ring);
  s.precision = p.working_precision(gens);
  s.milled = mill_problem(p);
  CoordinateChange completing = s.milled.center.completing_change(s.precision);
  for (const auto& g : gens)
    s.gens.push_back(substitute(g, completing).poly());
  s.center = s.milled.center.coordinate_form();
  DivisorSet divisors = DivisorSet::of_variables(p.divisor_vars);
  s.chart = build_chart(s.center, divisors);
  return s;
}

Fail check_double_gradation(Rng& rng) {
  for (const auto& p : regression_corpus()) {
    ChartSetup s = chart_for_problem(p);
    MonomialValuation val = s.center.valuation(s.precision);
    for (int i = 0; i < 6; ++i) {
      // Admissible elements at grades 1: products of gradation generators
      // with arbitrary factors.
      auto g1 = gradation_generators(s.center, Rat(1), 6);
      if (g1.empty()) continue;
      Polynomial f =
          g1[static_cast<std::size_t>(rand_int(rng, 0, g1.size() - 1))] *
          rand_poly(s.ring, rng, 2, 2, true);
      Polynomial g =
          g1[static_cast<std::size_t>(rand_int(rng, 0, g1.size() - 1))] *
          rand_poly(s.ring, rng, 2, 2, true);
      Polynomial lhs = controlled_transform(f * g, s.chart, Rat(2));
      Polynomial rhs = controlled_transform(f, s.chart, Rat(1)) *
                       controlled_transform(g, s.chart, Rat(1));
      if (lhs != rhs) return "double gradation failed for " + join(p.generators);
    }
  }
  return std::nullopt;
}

Fail check_strict_divides_controlled(Rng&) {
  for (const auto& p : regression_corpus()) {
    ChartSetup s = chart_for_problem(p);
    for (const auto& g : s.gens) {
      if (g.is_zero()) continue;
      auto [strict, e] = strict_transform(g, s.chart);
      LaurentPoly full = full_transform(g, s.chart);
      if (full.s_offset != e || full.poly != strict)
        return "strict transform disagrees with factored full transform";
      Polynomial controlled = controlled_transform(g, s.chart);
      auto quot = controlled.try_divide(strict);
      if (!quot) return "controlled transform is not a multiple of strict";
      if (!quot->is_term() && !quot->is_constant())
        return "controlled/strict quotient is not an s-power";
    }
  }
  return std::nullopt;
}

// Commutation sigma^c(C_x(R)) = C_{x'}(sigma^c(R)) as normalized generator
// sets, on the regression corpus.
Fail check_commutation(Rng&) {
  for (const auto& p : regression_corpus()) {
    RingPtr ring = p.ring();
    auto gens = p.parsed_generators(ring);
    long prec = p.working_precision(gens);
    DivisorSet divisors = DivisorSet::of_variables(p.divisor_vars);
    std::vector<bool> flags = divisors.flags_for(ring, DivisorPolicy::Total);

    ReesAlgebra R = ReesAlgebra::of_ideal(ring, gens);
    auto a1 = ord_rees(R, prec);
    if (!a1) continue;
    MaximalContact contact = maximal_contact(R, *a1, flags, prec);

    // Normalize coordinates so the contact block is a coordinate block.
    MillingResult milled = mill_problem(p);
    // The contact's block invariant must be the head of the milled tuple.
    for (std::size_t i = 0; i < contact.inv1.size(); ++i)
      if (milled.inv.entries().at(i) != contact.inv1.entries()[i])
        return "maximal contact disagrees with the milled first block";
    CoordinateChange completing = milled.center.completing_change(prec);
    std::vector<Polynomial> rewritten;
    for (const auto& g : gens)
      rewritten.push_back(substitute(g, completing).poly());
    ReesAlgebra Rw = ReesAlgebra::of_ideal(ring, rewritten);
    Center coord = milled.center.coordinate_form();
    BlowupChart chart = build_chart(coord, divisors);

    // Contact block in the completed coordinates: the pivots of the first
    // milled block.
    std::vector<std::size_t> piv = milled.center.pivots();
    Rat first_a = milled.center.entries()[0].a;
    MaximalContact coord_contact;
    std::vector<QPlus> blockq;
    for (std::size_t i = 0; i < milled.center.entries().size(); ++i) {
      if (milled.center.entries()[i].a != first_a) continue;
      coord_contact.params.push_back({Polynomial::variable(ring, piv[i]),
                                      milled.center.entries()[i].divisorial,
                                      piv[i]});
      blockq.emplace_back(first_a, milled.center.entries()[i].divisorial);
    }
    coord_contact.inv1.append_block(blockq);

    MillingState st0 = initial_milling_state(Rw, flags, prec);
    MillingState st1 = coefficient_ideal(st0, coord_contact, first_a);

    // Route 1: transform the coefficient ideal.
    std::vector<GradedElement> c_gens;
    for (const auto& cp : coord_contact.params)
      c_gens.push_back({cp.param, first_a.inverse()});
    for (const auto& [jet, grade] : st1.residual)
      if (!jet.is_zero()) c_gens.push_back({jet.poly(), grade});
    ReesAlgebra C(ring, c_gens);
    ReesAlgebra lhs = transform_algebra(C, chart);

    // Route 2: coefficient ideal of the transformed algebra.
    ReesAlgebra Rt = transform_algebra(Rw, chart);
    std::vector<bool> tflags =
        chart.divisors().flags_for(chart.chart_ring(), DivisorPolicy::Total);
    MaximalContact t_contact;
    std::vector<QPlus> tq;
    for (const auto& cp : coord_contact.params) {
      std::size_t tv = chart.chart_index_of_source()[cp.pivot];
      t_contact.params.push_back(
          {Polynomial::variable(chart.chart_ring(), tv), cp.divisorial, tv});
      tq.emplace_back(first_a, cp.divisorial);
    }
    t_contact.inv1.append_block(tq);
    MillingState ts0 = initial_milling_state(Rt, tflags, prec);
    MillingState ts1 = coefficient_ideal(ts0, t_contact, first_a);
    std::vector<GradedElement> rhs_gens;
    for (const auto& cp : t_contact.params)
      rhs_gens.push_back({cp.param, first_a.inverse()});
    for (const auto& [jet, grade] : ts1.residual)
      if (!jet.is_zero()) rhs_gens.push_back({jet.poly(), grade});

    auto key = [](const ReesAlgebra& A) {
      std::vector<std::string> v;
      for (const auto& g : A.generators())
        if (!g.poly.is_zero())
          v.push_back(g.grade.to_string() + "|" + g.poly.monic().to_string());
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      return v;
    };
    if (key(lhs) != key(ReesAlgebra(chart.chart_ring(), rhs_gens)))
      return "transform/coefficient-ideal commutation failed for " +
             join(p.generators) + ": {" + join(key(lhs)) + "} vs {" +
             join(key(ReesAlgebra(chart.chart_ring(), rhs_gens))) + "}";
  }
  return std::nullopt;
}

Fail check_restriction_compatibility(Rng&) {
  for (const auto& p : regression_corpus()) {
    ChartSetup s = chart_for_problem(p);
    if (s.center.entries().size() < 2) continue;
    const RingPtr& ring = s.ring;

    // H = zero locus of the first block of center coordinates.
    Rat first_a = s.center.entries()[0].a;
    std::vector<std::size_t> block_vars;
    for (const auto& e : s.center.entries())
      if (e.a == first_a)
        for (std::size_t v = 0; v < ring->nvars(); ++v)
          if (e.param.uses_variable(v)) block_vars.push_back(v);
    if (block_vars.size() == s.center.entries().size()) continue;

    // Restricted center over the smaller ring.
    std::vector<std::string> rest_vars;
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
      if (std::find(block_vars.begin(), block_vars.end(), v) == block_vars.end()) {
        keep.push_back(v);
        rest_vars.push_back(ring->vars[v]);
      }
    }
    RingPtr rring = make_ring(ring->field, rest_vars);
    auto restrict_poly = [&](const Polynomial& f) {
      Polynomial out(rring);
      for (const auto& [m, c] : f.terms()) {
        bool kill = false;
        for (auto v : block_vars)
          if (m[v] > 0) kill = true;
        if (kill) continue;
        Monomial nm(rring->nvars());
        for (std::size_t i = 0; i < keep.size(); ++i) nm[i] = m[keep[i]];
        out.add_term(nm, c);
      }
      return out;
    };
    std::vector<CenterEntry> rest_entries;
    for (const auto& e : s.center.entries())
      if (e.a != first_a)
        rest_entries.push_back({restrict_poly(e.param), e.a, e.divisorial});
    Center rest_center(rring, rest_entries);
    BlowupChart rest_chart = build_chart(rest_center, DivisorSet());

    Rat k = s.center.w_total() / rest_center.w_total();
    if (!k.is_integer()) return "restricted w_A does not divide w_A";

    for (const auto& g : s.gens) {
      Polynomial gH = restrict_poly(g);
      if (gH.is_zero()) continue;
      auto [sg, se] = strict_transform(g, s.chart);
      // Restrict the full-chart strict transform to V(first-block primes).
      Polynomial lhs(s.chart.chart_ring());
      {
        std::vector<std::size_t> kill;
        for (auto v : block_vars)
          kill.push_back(s.chart.chart_index_of_source()[v]);
        lhs = sg.restrict_zero(kill);
      }
      auto [sh, seH] = strict_transform(gH, rest_chart);
      // Map the restricted-chart result into the full chart: s_H -> s^k,
      // other variables by name.
      std::vector<Polynomial> images;
      for (std::size_t v = 0; v < rest_chart.chart_ring()->nvars(); ++v) {
        const std::string& name = rest_chart.chart_ring()->vars[v];
        if (v == rest_chart.s_index()) {
          Monomial m(s.chart.chart_ring()->nvars());
          m[s.chart.s_index()] = static_cast<uint32_t>(k.to_long());
          images.push_back(Polynomial::of_monomial(
              s.chart.chart_ring(), m, Coeff::one(ring->field)));
        } else {
          int idx = s.chart.chart_ring()->index_of(name);
          if (idx < 0) return "restricted chart variable missing in full chart";
          images.push_back(
              Polynomial::variable(s.chart.chart_ring(), idx));
        }
      }
      Polynomial rhs = sh.substituted(s.chart.chart_ring(), images);
      // Compare up to the factored s-powers: lhs may carry extra s factors
      // when restriction killed the lowest terms.
      if (lhs.is_zero()) continue;
      Monomial content = lhs.monomial_content();
      Polynomial lhs_red(s.chart.chart_ring());
      for (const auto& [m, c] : lhs.terms())
        lhs_red.add_term(content.quotient_of(m), c);
      Monomial rcontent = rhs.monomial_content();
      Polynomial rhs_red(s.chart.chart_ring());
      for (const auto& [m, c] : rhs.terms())
        rhs_red.add_term(rcontent.quotient_of(m), c);
      if (lhs_red != rhs_red)
        return "restriction compatibility failed for " + join(p.generators);
    }
  }
  return std::nullopt;
}

Fail check_inv_drop(Rng&) {
  for (const auto& p : regression_corpus()) {
    ChartSetup s = chart_for_problem(p);
    const RingPtr& cring = s.chart.chart_ring();
    std::vector<Polynomial> transformed;
    for (const auto& g : s.gens)
      if (!g.is_zero())
        transformed.push_back(controlled_transform(g, s.chart));

    // At the vertex origin the invariant persists.
    std::vector<Coeff> origin(cring->nvars(), Coeff::zero(cring->field));
    auto at_vertex = mill_at_point(cring, transformed, s.chart.divisors(),
                                   origin, s.precision, DivisorPolicy::Total);
    if (!at_vertex) return "transform trivial at the vertex for " + join(p.generators);
    if (at_vertex->inv != s.milled.inv)
      return "invariant changed at the vertex for " + join(p.generators) +
             ": " + at_vertex->inv.to_string() + " vs " +
             s.milled.inv.to_string();

    // At every sampled B+ point it drops strictly.
    for (auto v : s.chart.vertex_vars()) {
      std::vector<Coeff> pt(cring->nvars(), Coeff::zero(cring->field));
      pt[v] = Coeff::one(cring->field);
      auto r = mill_at_point(cring, transformed, s.chart.divisors(), pt,
                             s.precision, DivisorPolicy::Total);
      if (!r) continue;  // unit or zero: trivially smaller
      if (!(r->inv < s.milled.inv))
        return "invariant did not drop off the vertex for " + join(p.generators);
    }
  }
  return std::nullopt;
}

Fail check_off_center_triviality(Rng& rng) {
  for (const auto& p : regression_corpus()) {
    ChartSetup s = chart_for_problem(p);
    const RingPtr& ring = s.ring;
    const RingPtr& cring = s.chart.chart_ring();
    // Pullback identity f(x) = s^e * p(s, x') at random points with s != 0
    // and x' = x * s^{-w}: over the locus where a center parameter is
    // invertible the chart is X x T.
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Coeff> x;
      for (std::size_t v = 0; v < ring->nvars(); ++v)
        x.push_back(rand_coeff(ring, rng, true));
      Coeff sval = rand_coeff(ring, rng, true);
      std::vector<Coeff> chart_pt(cring->nvars(), Coeff::zero(cring->field));
      chart_pt[s.chart.s_index()] = sval;
      for (std::size_t v = 0; v < ring->nvars(); ++v) {
        std::size_t cv = s.chart.chart_index_of_source()[v];
        long w = s.chart.weights()[cv];
        Coeff xv = x[v];
        if (w > 0) xv = xv / sval.pow(static_cast<unsigned long>(w));
        chart_pt[cv] = xv;
      }
      for (const auto& g : s.gens) {
        LaurentPoly full = full_transform(g, s.chart);
        Coeff lhs = g.evaluate(x);
        Coeff rhs = full.poly.evaluate(chart_pt) *
                    sval.pow(static_cast<unsigned long>(full.s_offset));
        if (lhs != rhs) return "pullback identity failed off the center";
      }
    }
  }
  return std::nullopt;
}

Fail check_exceptional_principality(Rng&) {
  for (const auto& p : regression_corpus()) {
    ChartSetup s = chart_for_problem(p);
    if (!exceptional_principality_check(s.center, s.chart))
      return "exceptional divisor not principal on a localization";
    BlowupChart corrupted = s.chart;
    corrupted.corrupt_weight(0, 0);
    if (exceptional_principality_check(s.center, corrupted))
      return "corrupted chart passed the principality check";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// graded / toric properties
// ---------------------------------------------------------------------------

Fail check_initial_form_multiplicative(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y", "z"});
  WeightedGrading grading{{3, 2, 1}};
  for (int i = 0; i < 25; ++i) {
    Polynomial f = rand_poly(ring, rng, 4, 4, true);
    Polynomial g = rand_poly(ring, rng, 4, 4, true);
    auto [inf, df] = initial_form(f, grading);
    auto [ing, dg] = initial_form(g, grading);
    auto [infg, dfg] = initial_form(f * g, grading);
    if (dfg != df + dg || infg != inf * ing)
      return "initial form not multiplicative";
  }
  return std::nullopt;
}

Fail check_exceptional_fiber_is_initial_form(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y"});
  std::vector<CenterEntry> entries = {
      {Polynomial::variable(ring, 0), Rat(2), false},
      {Polynomial::variable(ring, 1), Rat(3), false}};
  Center center(ring, entries);
  BlowupChart chart = build_chart(center, DivisorSet());
  WeightedGrading grading = WeightedGrading::of_center(center);
  for (int i = 0; i < 25; ++i) {
    Polynomial f = rand_poly(ring, rng, 5, 5, true);
    auto [strict, e] = strict_transform(f, chart);
    Polynomial fiber = strict.restrict_zero({chart.s_index()});
    Polynomial expected = initial_form(f, grading).first.permuted(
        chart.chart_ring(), chart.chart_index_of_source());
    if (fiber != expected)
      return "strict transform at s=0 differs from the initial form";
  }
  return std::nullopt;
}

Fail check_homogeneous_transform(Rng& rng) {
  RingPtr ring = make_ring(Field::rationals(), {"x", "y", "z"});
  for (int i = 0; i < 15; ++i) {
    std::vector<CenterEntry> entries;
    for (std::size_t v = 0; v < 3; ++v)
      entries.push_back(
          {Polynomial::variable(ring, v), Rat(1, rand_int(rng, 1, 4)), false});
    Center center(ring, entries);
    WeightedGrading grading = WeightedGrading::of_center(center);
    // Random homogeneous polynomial for the grading.
    std::optional<long> target;
    Polynomial f(ring);
    for (int t = 0; t < 6; ++t) {
      Monomial m = rand_monomial(3, rng, 6);
      if (m.is_one()) continue;
      if (!target) target = grading.grade_of(m);
      if (grading.grade_of(m) != *target) continue;
      f.add_term(m, rand_coeff(ring, rng, true));
    }
    if (f.is_zero()) continue;
    if (!is_weighted_homogeneous({f}, grading))
      return "constructed polynomial not homogeneous";
    if (!homogeneous_transform_check(f, center))
      return "homogeneous transform identity failed";
  }
  return std::nullopt;
}

Fail check_toric_consistency(Rng& rng) {
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = static_cast<std::size_t>(rand_int(rng, 2, 4));
    Cone sigma;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<long> e(n, 0);
      e[i] = 1;
      sigma.rays.push_back(e);
    }
    std::vector<long> v(n);
    for (auto& x : v) x = rand_int(rng, 1, 6);
    CobordismCone cc = cobordism_cone(sigma, v);
    auto projected = project_upper_boundary(cc);
    Fan star = star_subdivision(Fan::of_cone(sigma), v);
    auto expected = star.canonical();
    if (projected.size() != expected.size())
      return "cone count mismatch in toric consistency";
    for (std::size_t i = 0; i < projected.size(); ++i)
      if (!(projected[i] == expected[i]))
        return "projected upper boundary differs from star subdivision";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// cli / driver properties
// ---------------------------------------------------------------------------

// One principalize run per corpus item feeds the monotonicity and torus
// checks; the second run backs the byte-identical determinism claim.
std::vector<Trace>& corpus_traces() {
  static std::vector<Trace> traces = [] {
    std::vector<Trace> out;
    for (const auto& p : regression_corpus())
      out.push_back(run_principalize(p, Plan{}));
    return out;
  }();
  return traces;
}

Fail check_trace_monotonic_and_deterministic(Rng&) {
  auto corpus = regression_corpus();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Trace& t1 = corpus_traces()[k];
    Trace t2 = run_principalize(corpus[k], Plan{});
    if (t1.to_json().dump() != t2.to_json().dump())
      return "trace not byte-identical across runs";
    for (std::size_t i = 1; i < t1.invariants.size(); ++i)
      if (!(t1.invariants[i] < t1.invariants[i - 1]))
        return "trace invariants not strictly decreasing";
  }
  return std::nullopt;
}

Fail check_torus_bookkeeping(Rng&) {
  auto corpus = regression_corpus();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Problem& p = corpus[k];
    const Trace& t = corpus_traces()[k];
    int step = 0;
    for (const auto& rec : t.steps) {
      ++step;
      auto torus = rec.at("torus").get<std::vector<std::vector<long>>>();
      auto linear = rec.at("torus_linear").get<std::vector<bool>>();
      if (static_cast<int>(torus.size()) != step)
        return "torus row count mismatch";
      if (linear.size() != torus.size()) return "torus flag count mismatch";
      RingPtr cring = make_ring(
          p.field, [&] {
            std::vector<std::string> vs;
            vs.push_back(rec.at("chart").at("exceptional").get<std::string>());
            for (const auto& v : rec.at("chart").at("vars"))
              vs.push_back(v.at("name").get<std::string>());
            return vs;
          }());
      for (const auto& gs : rec.at("generators")) {
        Polynomial g = parse_polynomial(gs.get<std::string>(), cring);
        // Rows stay linear exactly until a localization moves a weighted
        // coordinate; homogeneity is asserted for the linear rows.
        for (std::size_t r = 0; r < torus.size(); ++r)
          if (linear[r] && !is_torus_homogeneous(g, torus[r]))
            return "transformed generator not torus-homogeneous";
      }
      if (!linear.back()) return "freshly created torus row must be linear";
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// acceptance criteria
// ---------------------------------------------------------------------------

Problem snc_pair_problem() {
  Problem p = make_problem({"x1", "x2", "x3"}, {"x1", "x2"},
                           {"(x1+x2^2)^2+x3^7"}, Mode::Principalize);
  return p;
}

Problem two_block_problem() {
  return make_problem({"x1", "x2", "x3", "x4", "x5", "x6"}, {},
                      {"x1*x2*x3+x4^4+x5^2*x6^2"}, Mode::Principalize);
}

Fail criterion_snc_pair(long precision_override) {
  Problem p = snc_pair_problem();
  if (precision_override > 0) p.options.precision = precision_override;
  RingPtr ring = p.ring();
  auto gens = p.parsed_generators(ring);
  MillingResult r = mill_problem(p, precision_override);
  if (r.inv.to_string() != "(2+,4+,7)")
    return "inv = " + r.inv.to_string() + ", want (2+,4+,7)";
  nlohmann::json want_center = {
      {"entries",
       {{{"param", "x1"}, {"a", "2"}, {"divisorial", true}},
        {{"param", "x2"}, {"a", "4"}, {"divisorial", true}},
        {{"param", "x3"}, {"a", "7"}, {"divisorial", false}}}}};
  if (r.center.to_json() != want_center)
    return "center = " + r.center.to_json().dump();
  if (r.center.w_total() != Rat(28))
    return "w_A = " + r.center.w_total().to_string() + ", want 28";
  auto ws = r.center.chart_weights();
  if (ws != std::vector<long>{14, 7, 4}) return "chart weights wrong";

  ChartSetup s;
  {
    s.ring = ring;
    s.precision = p.working_precision(gens);
    if (precision_override > 0) s.precision = precision_override;
    s.milled = r;
    CoordinateChange completing = r.center.completing_change(s.precision);
    for (const auto& g : gens)
      s.gens.push_back(substitute(g, completing).poly());
    s.center = r.center.coordinate_form();
    s.chart = build_chart(s.center, DivisorSet::of_variables(p.divisor_vars));
  }
  Polynomial controlled = controlled_transform(s.gens[0], s.chart);
  if (controlled.to_string() != "(x1'+x2'^2)^2+x3'^7" &&
      controlled.to_string() != "x1'^2+2*x1'*x2'^2+x2'^4+x3'^7")
    return "controlled transform = " + controlled.to_string();
  Polynomial expanded =
      parse_polynomial("x1'^2+2*x1'*x2'^2+x2'^4+x3'^7", s.chart.chart_ring());
  if (controlled != expanded) return "controlled transform value wrong";

  // Next step with the plan point (s, x1', x2', x3') = (0, -1, 1, 0).
  Plan plan;
  plan.steps.resize(2);
  plan.steps[1].point = std::vector<std::string>{"0", "-1", "1", "0"};
  Trace t = run_principalize(p, plan);
  if (t.invariants.size() < 2) return "plan run took too few steps";
  if (t.invariants[0].to_string() != "(2+,4+,7)")
    return "step-1 inv = " + t.invariants[0].to_string();
  if (t.invariants[1].to_string() != "(2,7)")
    return "step-2 inv = " + t.invariants[1].to_string() + ", want (2,7)";
  if (!(t.invariants[1] < t.invariants[0])) return "no strict drop";
  return std::nullopt;
}

Fail criterion_two_block(long precision_override) {
  Problem p = two_block_problem();
  MillingResult r = mill_problem(p, precision_override);
  if (r.inv.to_string() != "(3,3,3,4,4,4)")
    return "inv = " + r.inv.to_string() + ", want (3,3,3,4,4,4)";
  nlohmann::json want_center = {
      {"entries",
       {{{"param", "x1"}, {"a", "3"}, {"divisorial", false}},
        {{"param", "x2"}, {"a", "3"}, {"divisorial", false}},
        {{"param", "x3"}, {"a", "3"}, {"divisorial", false}},
        {{"param", "x4"}, {"a", "4"}, {"divisorial", false}},
        {{"param", "x5"}, {"a", "4"}, {"divisorial", false}},
        {{"param", "x6"}, {"a", "4"}, {"divisorial", false}}}}};
  if (r.center.to_json() != want_center)
    return "center = " + r.center.to_json().dump();
  if (r.center.chart_weights() != std::vector<long>{4, 4, 4, 3, 3, 3})
    return "blow-up weights wrong";
  return std::nullopt;
}

Fail criterion_diagonal_family(Rng& rng, long precision_override) {
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = static_cast<std::size_t>(rand_int(rng, 1, 5));
    std::vector<long> c(n);
    long last = 2;
    for (auto& ci : c) {
      last = std::min(9L, last + rand_int(rng, 0, 3));
      ci = last;
    }
    std::vector<std::string> vars;
    std::ostringstream expr;
    for (std::size_t i = 0; i < n; ++i) {
      vars.push_back("x" + std::to_string(i + 1));
      if (i) expr << "+";
      expr << vars.back() << "^" << c[i];
    }
    Problem p = make_problem(vars, {}, {expr.str()}, Mode::Principalize);
    if (precision_override > 0) p.options.precision = precision_override;
    MillingResult r = mill_problem(p, precision_override);
    std::vector<QPlus> want;
    for (auto ci : c) want.emplace_back(Rat(ci), false);
    if (r.inv != InvTuple(want))
      return "inv mismatch for " + expr.str() + ": " + r.inv.to_string();

    RingPtr ring = p.ring();
    auto gens = p.parsed_generators(ring);
    long prec = precision_override > 0 ? precision_override
                                       : p.working_precision(gens);
    CoordinateChange completing = r.center.completing_change(prec);
    Polynomial g = substitute(gens[0], completing).poly();
    Center coord = r.center.coordinate_form();
    BlowupChart chart = build_chart(coord, DivisorSet());
    Polynomial controlled = controlled_transform(g, chart);
    Polynomial expected =
        gens[0].permuted(chart.chart_ring(), chart.chart_index_of_source());
    if (controlled != expected)
      return "controlled transform not textually identical for " + expr.str();

    // Smoothness on each localization chart: the derivative along the
    // chart's own variable is a unit there (a constant times its power).
    auto [strict, e] = strict_transform(g, chart);
    for (auto v : chart.vertex_vars()) {
      Polynomial d = strict.derivative(v);
      if (d.is_zero()) return "vanishing derivative on localization chart";
      if (!d.is_term()) return "derivative not a single term";
      const Monomial& m = d.terms().begin()->first;
      for (std::size_t j = 0; j < m.nvars(); ++j)
        if (m[j] > 0 && j != v)
          return "derivative not a unit on its localization chart";
    }
  }
  return std::nullopt;
}

Fail criterion_valuation_oracle(Rng& rng) { return check_valuation_oracle(rng); }

Fail criterion_commutation(Rng& rng) { return check_commutation(rng); }

Fail criterion_inv_drop(Rng& rng) {
  Fail f = check_inv_drop(rng);
  if (f) return f;
  // Plan point of the SNC-pair regression: a sampled B+ point with a strictly
  // smaller invariant.
  Problem p = snc_pair_problem();
  ChartSetup s = chart_for_problem(p);
  std::vector<Polynomial> transformed;
  for (const auto& g : s.gens) transformed.push_back(controlled_transform(g, s.chart));
  const RingPtr& cring = s.chart.chart_ring();
  std::vector<Coeff> pt = {Coeff(cring->field, 0L), Coeff(cring->field, -1L),
                           Coeff(cring->field, 1L), Coeff(cring->field, 0L)};
  auto r = mill_at_point(cring, transformed, s.chart.divisors(), pt,
                         s.precision, DivisorPolicy::Total);
  if (!r) return "plan point unexpectedly trivial";
  if (r->inv.to_string() != "(2,7)")
    return "plan-point inv = " + r->inv.to_string() + ", want (2,7)";
  if (!(r->inv < s.milled.inv)) return "plan-point inv did not drop";
  return std::nullopt;
}

Fail criterion_uniqueness(Rng& rng) { return check_milling_choice_independence(rng); }

Fail criterion_toric(Rng& rng) { return check_toric_consistency(rng); }

Fail criterion_narasimhan(long precision_override) {
  (void)precision_override;  // all values here are exact polynomials
  RingPtr ring = make_ring(Field::prime(2), {"x", "y", "z", "w"});
  Polynomial f = parse_polynomial("x^2+y*z^3+z*w^3+y^7*w", ring);
  WeightedGrading grading{{32, 7, 19, 15}};
  auto [in, grade] = initial_form(f, grading);
  if (grade != 64 || in != f) return "f not weighted-homogeneous of grade 64";
  if (!is_weighted_homogeneous({f}, grading)) return "homogeneity test failed";

  Polynomial Y = f.derivative(1);
  Polynomial Z = f.derivative(2);
  Polynomial W = f.derivative(3);
  if (Y != parse_polynomial("z^3+y^6*w", ring))
    return "Y = " + Y.to_string();
  if (Z != parse_polynomial("y*z^2+w^3", ring))
    return "Z = " + Z.to_string();
  if (W != parse_polynomial("z*w^2+y^7", ring))
    return "W = " + W.to_string();
  Polynomial F = f + Polynomial::variable(ring, 1) * Y +
                 Polynomial::variable(ring, 2) * Z;
  if (F != parse_polynomial("x^2+y*z^3", ring))
    return "F = f+yY+zZ = " + F.to_string();

  std::vector<CenterEntry> entries = {
      {Polynomial::variable(ring, 0), Rat(1, 32), false},
      {Polynomial::variable(ring, 1), Rat(1, 7), false},
      {Polynomial::variable(ring, 2), Rat(1, 19), false},
      {Polynomial::variable(ring, 3), Rat(1, 15), false}};
  Center center(ring, entries);
  // Entries sort by ascending a = (1/32, 1/19, 1/15, 1/7); weights follow.
  WeightedGrading g2 = WeightedGrading::of_center(center);
  if (g2.weights != std::vector<long>{32, 7, 19, 15})
    return "Narasimhan chart weights wrong";
  if (!homogeneous_transform_check(f, center))
    return "Narasimhan homogeneous transform check failed";
  return std::nullopt;
}

// Exact-value snapshot used by the precision-stabilization criterion.
nlohmann::json acceptance_snapshot(std::uint64_t seed, long precision) {
  nlohmann::json snap;
  {
    Problem p = snc_pair_problem();
    MillingResult r = mill_problem(p, precision);
    snap["snc_pair_inv"] = r.inv.to_json();
    snap["snc_pair_center"] = r.center.to_json();
  }
  {
    MillingResult r = mill_problem(two_block_problem(), precision);
    snap["two_block_inv"] = r.inv.to_json();
    snap["two_block_center"] = r.center.to_json();
  }
  {
    Rng rng(seed + 11);
    std::ostringstream os;
    Fail f = criterion_diagonal_family(rng, precision);
    snap["diagonal_family"] = f ? *f : "ok";
  }
  for (const auto& p : regression_corpus()) {
    MillingResult r = mill_problem(p, precision);
    snap["corpus"].push_back(
        {{"gens", p.generators}, {"inv", r.inv.to_json()},
         {"center", r.center.to_json()}});
  }
  return snap;
}

Fail criterion_precision_stability(std::uint64_t seed) {
  // Default working precisions vary per problem; exercise a common pair.
  nlohmann::json lo = acceptance_snapshot(seed, 32);
  nlohmann::json hi = acceptance_snapshot(seed, 64);
  if (lo.dump() != hi.dump()) return "snapshots differ between N and 2N";
  Fail a = criterion_snc_pair(32), b = criterion_snc_pair(64);
  if (a || b) return "SNC-pair criterion unstable across precision";
  Fail c = criterion_two_block(32), d = criterion_two_block(64);
  if (c || d) return "two-block criterion unstable across precision";
  Fail e = criterion_narasimhan(32), f2 = criterion_narasimhan(64);
  if (e || f2) return "Narasimhan criterion unstable across precision";
  return std::nullopt;
}

CheckResult run_one(const std::string& name,
                    const std::function<Fail()>& fn) {
  CheckResult r;
  r.name = name;
  auto start = std::chrono::steady_clock::now();
  try {
    Fail f = fn();
    r.pass = !f.has_value();
    if (f) r.detail = *f;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
             .count();
  return r;
}

}  // namespace

std::vector<Problem> regression_corpus() {
  std::vector<Problem> out;
  out.push_back(snc_pair_problem());
  out.push_back(two_block_problem());
  out.push_back(make_problem({"x", "y"}, {}, {"x^2+y^3"}, Mode::Principalize));
  out.push_back(
      make_problem({"x1", "x2", "x3"}, {}, {"x1^3+x2^3+x3^4"}, Mode::Principalize));
  out.push_back(make_problem({"x", "y", "z", "w"}, {}, {"x^3+x^2*y*w+z^5"},
                             Mode::Principalize));
  out.push_back(
      make_problem({"x1", "x2"}, {"x2"}, {"x1^2+x2"}, Mode::Principalize));
  out.push_back(make_problem({"x", "y", "z"}, {"z"}, {"x^2+y^3+z^6"},
                             Mode::Principalize));
  return out;
}

std::vector<CheckResult> run_property_checks(std::uint64_t seed) {
  // Every value in the library is immutable and the checks share nothing,
  // so the suite fans out across threads and joins in declaration order.
  std::vector<std::pair<std::string, std::function<Fail()>>> jobs;
  auto add = [&](const std::string& name, const std::function<Fail(Rng&)>& fn,
                 std::uint64_t salt) {
    jobs.emplace_back(name, [fn, seed, salt]() {
      Rng rng(seed ^ salt);
      return fn(rng);
    });
  };
  add("algebra/ring-axioms", check_ring_axioms, 0x01);
  add("algebra/leibniz", check_leibniz, 0x02);
  add("algebra/divided-power-composition", check_divided_power_composition, 0x03);
  add("algebra/order-additivity", check_order_additivity, 0x04);
  add("algebra/substitution-multiplicative", check_substitution_multiplicative, 0x05);
  add("algebra/parser-round-trip", check_parser_round_trip, 0x06);
  add("rees/valuation-axioms", check_valuation_axioms, 0x11);
  add("rees/valuation-oracle", check_valuation_oracle, 0x12);
  add("rees/gradation-minimality", check_gradation_minimality, 0x13);
  add("rees/admissibility-rescale", check_admissibility_rescale, 0x14);
  add("rees/admissibility-permutation", check_admissibility_permutation, 0x15);
  add("invariant/qplus-total-order", check_qplus_order, 0x21);
  add("invariant/choice-independence", check_milling_choice_independence, 0x22);
  add("invariant/admissibility-certificate", check_admissibility_certificate, 0x23);
  add("invariant/maximality-falsification", check_maximality_falsification, 0x24);
  add("invariant/precision-stabilization", check_milling_stabilization, 0x25);
  add("invariant/ord-matches-inv-head", check_ord_matches_inv_head, 0x26);
  add("cobordant/double-gradation", check_double_gradation, 0x31);
  add("cobordant/strict-divides-controlled", check_strict_divides_controlled, 0x32);
  add("cobordant/transform-commutation", check_commutation, 0x33);
  add("cobordant/restriction-compatibility", check_restriction_compatibility, 0x34);
  add("cobordant/invariant-drop", check_inv_drop, 0x35);
  add("cobordant/off-center-triviality", check_off_center_triviality, 0x36);
  add("cobordant/exceptional-principality", check_exceptional_principality, 0x37);
  add("graded/initial-form-multiplicative", check_initial_form_multiplicative, 0x41);
  add("graded/exceptional-fiber-initial-form", check_exceptional_fiber_is_initial_form, 0x42);
  add("graded/homogeneous-transform", check_homogeneous_transform, 0x43);
  add("graded/toric-consistency", check_toric_consistency, 0x44);
  add("cli/trace-monotonic-deterministic", check_trace_monotonic_and_deterministic, 0x51);
  add("cli/torus-bookkeeping", check_torus_bookkeeping, 0x52);

  std::vector<std::future<CheckResult>> futures;
  futures.reserve(jobs.size());
  for (auto& [name, fn] : jobs)
    futures.push_back(std::async(std::launch::async, run_one, name, fn));
  std::vector<CheckResult> out;
  out.reserve(futures.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(run_one("criterion-1 SNC-pair regression",
                        [&] { return criterion_snc_pair(0); }));
  out.push_back(run_one("criterion-2 two-block regression",
                        [&] { return criterion_two_block(0); }));
  out.push_back(run_one("criterion-3 diagonal family", [&] {
    Rng rng(seed + 11);
    return criterion_diagonal_family(rng, 0);
  }));
  out.push_back(run_one("criterion-4 valuation oracle", [&] {
    Rng rng(seed + 12);
    return criterion_valuation_oracle(rng);
  }));
  out.push_back(run_one("criterion-5 commutation suite", [&] {
    Rng rng(seed + 13);
    return criterion_commutation(rng);
  }));
  out.push_back(run_one("criterion-6 invariant drop", [&] {
    Rng rng(seed + 14);
    return criterion_inv_drop(rng);
  }));
  out.push_back(run_one("criterion-7 uniqueness/choice-independence", [&] {
    Rng rng(seed + 15);
    return criterion_uniqueness(rng);
  }));
  out.push_back(run_one("criterion-8 toric consistency", [&] {
    Rng rng(seed + 16);
    return criterion_toric(rng);
  }));
  out.push_back(
      run_one("criterion-9 Narasimhan char-2", [&] { return criterion_narasimhan(0); }));
  out.push_back(run_one("criterion-10 precision stabilization",
                        [&] { return criterion_precision_stability(seed); }));
  return out;
}

}  // namespace cobord
