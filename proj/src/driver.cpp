#include "cobord/driver.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include "cobord/errors.hpp"
#include "cobord/graded.hpp"
#include "cobord/parser.hpp"

namespace cobord {

Mode mode_from_string(const std::string& s) {
  if (s == "principalize") return Mode::Principalize;
  if (s == "embedded") return Mode::Embedded;
  if (s == "inv-only" || s == "inv") return Mode::InvOnly;
  if (s == "blowup-only" || s == "blowup") return Mode::BlowupOnly;
  if (s == "toric") return Mode::Toric;
  throw Error("unknown mode '" + s + "'", ExitCode::ParseError);
}

std::string mode_to_string(Mode m) {
  switch (m) {
    case Mode::Principalize: return "principalize";
    case Mode::Embedded: return "embedded";
    case Mode::InvOnly: return "inv-only";
    case Mode::BlowupOnly: return "blowup-only";
    case Mode::Toric: return "toric";
  }
  return "?";
}

RingPtr Problem::ring() const { return make_ring(field, vars); }

std::vector<Polynomial> Problem::parsed_generators(const RingPtr& r) const {
  std::vector<Polynomial> out;
  out.reserve(generators.size());
  for (const auto& g : generators) out.push_back(parse_polynomial(g, r));
  return out;
}

std::vector<Coeff> Problem::parsed_point(const RingPtr& r) const {
  std::vector<Coeff> p(r->nvars(), Coeff::zero(r->field));
  if (point.empty()) return p;
  if (point.size() != r->nvars())
    throw Error("point has " + std::to_string(point.size()) +
                    " coordinates for " + std::to_string(r->nvars()) +
                    " variables",
                ExitCode::ParseError);
  for (std::size_t i = 0; i < point.size(); ++i)
    p[i] = Coeff(r->field, Rat::parse(point[i]));
  return p;
}

long Problem::working_precision(const std::vector<Polynomial>& gens) const {
  return options.precision > 0 ? options.precision : default_precision(gens);
}

Problem Problem::from_json(const nlohmann::json& j) {
  Problem p;
  p.field = Field::parse(j.value("field", std::string("Q")));
  p.vars = j.at("vars").get<std::vector<std::string>>();
  if (j.contains("divisors"))
    p.divisor_vars = j.at("divisors").get<std::vector<std::string>>();
  p.generators = j.at("generators").get<std::vector<std::string>>();
  if (j.contains("point")) p.point = j.at("point").get<std::vector<std::string>>();
  if (j.contains("center")) p.center = j.at("center");
  p.mode = mode_from_string(j.value("mode", std::string("principalize")));
  if (j.contains("options")) {
    const auto& o = j.at("options");
    p.options.precision = o.value("precision", 0L);
    p.options.max_steps = o.value("max_steps", 24);
    std::string pol = o.value("divisor_policy", std::string("total"));
    if (pol != "total" && pol != "strict")
      throw Error("divisor_policy must be total or strict", ExitCode::ParseError);
    p.options.policy =
        pol == "total" ? DivisorPolicy::Total : DivisorPolicy::Strict;
  }
  for (const auto& d : p.divisor_vars) {
    bool known = false;
    for (const auto& v : p.vars) known = known || v == d;
    if (!known) throw UnknownVariable(d);
  }
  return p;
}

nlohmann::json Problem::to_json() const {
  nlohmann::json j = {
      {"field", field.to_string()},
      {"vars", vars},
      {"divisors", divisor_vars},
      {"generators", generators},
      {"point", point},
      {"mode", mode_to_string(mode)},
      {"options",
       {{"precision", options.precision},
        {"max_steps", options.max_steps},
        {"divisor_policy",
         options.policy == DivisorPolicy::Total ? "total" : "strict"}}}};
  if (!center.is_null()) j["center"] = center;
  return j;
}

Plan Plan::from_json(const nlohmann::json& j) {
  Plan p;
  if (!j.contains("steps")) return p;
  for (const auto& s : j.at("steps")) {
    PlanStep st;
    if (s.contains("point"))
      st.point = s.at("point").get<std::vector<std::string>>();
    if (s.contains("changes"))
      for (const auto& c : s.at("changes")) {
        std::string text = c.get<std::string>();
        auto at = text.find(":=");
        if (at == std::string::npos)
          throw Error("plan change must read \"name := expr\": " + text,
                      ExitCode::ParseError);
        auto trim = [](std::string v) {
          while (!v.empty() && std::isspace((unsigned char)v.front())) v.erase(v.begin());
          while (!v.empty() && std::isspace((unsigned char)v.back())) v.pop_back();
          return v;
        };
        st.changes.emplace_back(trim(text.substr(0, at)), trim(text.substr(at + 2)));
      }
    if (s.contains("certificates"))
      for (const auto& c : s.at("certificates")) {
        Certificate cert;
        for (const auto& t : c.at("terms"))
          cert.terms.push_back({t.at("mult").get<std::string>(),
                                t.at("sym").get<std::string>()});
        cert.equals = c.at("equals").get<std::string>();
        st.certificates.push_back(std::move(cert));
      }
    if (s.contains("probe_box"))
      st.probe_box = s.at("probe_box").get<std::vector<std::vector<long>>>();
    st.assert_codimension = s.value("assert_codimension", false);
    p.steps.push_back(std::move(st));
  }
  return p;
}

nlohmann::json Trace::to_json(bool with_timings) const {
  nlohmann::json j = {{"status", status}, {"steps", steps}, {"final", final_state}};
  if (with_timings) j["timings_ms"] = timings_ms;
  return j;
}

std::optional<MillingResult> mill_at_point(
    const RingPtr& ring, const std::vector<Polynomial>& gens,
    const DivisorSet& divisors, const std::vector<Coeff>& point,
    long precision, DivisorPolicy policy, bool certified) {
  std::vector<Polynomial> local;
  local.reserve(gens.size());
  bool all_zero = true;
  for (const auto& g : gens) {
    Polynomial t = g.translated(point);
    if (!t.is_zero()) all_zero = false;
    if (!t.constant_term().is_zero()) return std::nullopt;  // unit here
    local.push_back(std::move(t));
  }
  if (all_zero) return std::nullopt;
  std::vector<bool> flags = divisors.flags_for(ring, policy);
  for (std::size_t i = 0; i < flags.size(); ++i)
    if (flags[i] && !point[i].is_zero()) flags[i] = false;  // not through p
  ReesAlgebra R = ReesAlgebra::of_ideal(ring, std::move(local));
  return certified ? mill_certified(R, flags, precision)
                   : mill(R, flags, precision);
}

namespace {

struct LoopState {
  RingPtr ring;
  std::vector<Polynomial> gens;
  DivisorSet divisors;
  std::vector<std::vector<long>> torus;
  // A torus row stays linear on the working chart until a localization
  // moves a coordinate the row weights; afterwards the row is bookkeeping
  // only.
  std::vector<bool> torus_linear;
  long precision = 0;
  int blowups = 0;
};

bool row_homogeneous(const Polynomial& g, const std::vector<long>& row) {
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

std::string coeff_str(const Coeff& c) { return c.to_string(); }

nlohmann::json point_json(const std::vector<Coeff>& p) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : p) a.push_back(coeff_str(c));
  return a;
}

nlohmann::json gens_json(const std::vector<Polynomial>& gens) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& g : gens) a.push_back(g.to_string());
  return a;
}

bool exceptional_supported(const std::vector<Polynomial>& gens,
                           const DivisorSet& divisors, const RingPtr& ring) {
  // Every generator a constant times a monomial in divisor-cut variables.
  std::vector<bool> flags = divisors.flags_for(ring, DivisorPolicy::Total);
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!g.is_term()) return false;
    const Monomial& m = g.terms().begin()->first;
    for (std::size_t v = 0; v < ring->nvars(); ++v)
      if (m[v] > 0 && !flags[v]) return false;
  }
  return true;
}

std::vector<Coeff> zero_point(const RingPtr& ring) {
  return std::vector<Coeff>(ring->nvars(), Coeff::zero(ring->field));
}

// Candidate points for the next center: the plan point if present, else the
// problem's marked point on step 0 and the localization-chart origins
// (one transformed coordinate set to 1) afterwards.
std::vector<std::vector<Coeff>> candidate_points(
    const LoopState& st, const std::vector<std::size_t>& last_vertex,
    const std::vector<Coeff>& marked, const PlanStep* plan_step, int step) {
  if (plan_step && plan_step->point) {
    std::vector<Coeff> p(st.ring->nvars(), Coeff::zero(st.ring->field));
    const auto& coords = *plan_step->point;
    if (coords.size() != st.ring->nvars())
      throw Error("plan point arity mismatch", ExitCode::ParseError);
    for (std::size_t i = 0; i < coords.size(); ++i)
      p[i] = Coeff(st.ring->field, Rat::parse(coords[i]));
    return {p};
  }
  if (step == 0) return {marked};
  std::vector<std::vector<Coeff>> out;
  for (auto v : last_vertex) {
    std::vector<Coeff> p = zero_point(st.ring);
    p[v] = Coeff::one(st.ring->field);
    out.push_back(std::move(p));
  }
  return out;
}

void apply_plan_changes(LoopState& st, const PlanStep* plan_step) {
  if (!plan_step) return;
  for (const auto& [name, expr] : plan_step->changes) {
    Polynomial e = parse_polynomial(expr, st.ring);
    for (std::size_t r = 0; r < st.torus.size(); ++r)
      if (st.torus_linear[r] && !row_homogeneous(e, st.torus[r]))
        st.torus_linear[r] = false;
    auto lin = e.linear_part();
    std::vector<bool> div_flags =
        st.divisors.flags_for(st.ring, DivisorPolicy::Total);
    std::size_t pivot = st.ring->nvars();
    for (std::size_t v = 0; v < st.ring->nvars(); ++v)
      if (!lin[v].is_zero() && !div_flags[v]) {
        pivot = v;
        break;
      }
    if (pivot == st.ring->nvars())
      throw Error("plan change '" + name + "' needs a free linear pivot",
                  ExitCode::ParseError);
    std::vector<std::string> names = st.ring->vars;
    names[pivot] = name;
    RingPtr new_ring = make_ring(st.ring->field, names);
    std::vector<Polynomial> new_in_old;
    for (std::size_t v = 0; v < st.ring->nvars(); ++v)
      new_in_old.push_back(v == pivot ? e : Polynomial::variable(st.ring, v));
    CoordinateChange change =
        CoordinateChange::make(st.ring, new_ring, new_in_old, st.precision);
    std::vector<Polynomial> gens;
    gens.reserve(st.gens.size());
    for (const auto& g : st.gens)
      gens.push_back(substitute(g, change).poly());
    st.gens = std::move(gens);
    st.ring = new_ring;
    // Divisor components sit on non-pivot coordinates; names are unchanged.
  }
}

Trace run_loop(const Problem& problem, const Plan& plan, bool embedded) {
  if (problem.field.is_prime_field())
    throw NotCharZero("resolution loops require characteristic zero");
  LoopState st;
  st.ring = problem.ring();
  st.gens = problem.parsed_generators(st.ring);
  st.divisors = DivisorSet::of_variables(problem.divisor_vars);
  st.precision = problem.working_precision(st.gens);

  Trace trace;
  std::vector<std::size_t> last_vertex;
  std::vector<Coeff> marked = problem.parsed_point(st.ring);
  std::optional<InvTuple> prev_inv;

  for (int step = 0;; ++step) {
    auto step_start = std::chrono::steady_clock::now();
    bool all_zero = true;
    for (const auto& g : st.gens) all_zero = all_zero && g.is_zero();
    if (all_zero) {
      trace.status = "zero-ideal";
      break;
    }
    if (!embedded && exceptional_supported(st.gens, st.divisors, st.ring)) {
      trace.status = "principalized";
      break;
    }
    if (step >= problem.options.max_steps)
      throw MaxStepsExceeded("no termination after " +
                             std::to_string(problem.options.max_steps) +
                             " blow-ups");

    const PlanStep* plan_step = plan.step(step);
    apply_plan_changes(st, plan_step);

    auto candidates = candidate_points(st, last_vertex, marked, plan_step, step);
    // Rank candidates with single-precision milling, then certify the
    // winner with the stabilization re-check.
    std::optional<MillingResult> best;
    std::optional<std::vector<Coeff>> best_point;
    for (const auto& p : candidates) {
      auto r = mill_at_point(st.ring, st.gens, st.divisors, p, st.precision,
                             problem.options.policy, /*certified=*/false);
      if (!r) continue;
      if (!best || best->inv < r->inv) {
        best = std::move(r);
        best_point = p;
      }
    }
    if (best)
      best = mill_at_point(st.ring, st.gens, st.divisors, *best_point,
                           st.precision, problem.options.policy);
    if (!best) {
      trace.status = embedded ? "resolved" : "principalized-at-samples";
      break;
    }
    if (embedded && best->inv.is_all_ones()) {
      trace.status = "smooth-snc";
      nlohmann::json rec = {{"step", step},
                            {"point", point_json(*best_point)},
                            {"inv", best->inv.to_json()},
                            {"center", best->center.to_json()}};
      trace.steps.push_back(std::move(rec));
      trace.invariants.push_back(best->inv);
      break;
    }
    if (prev_inv && !(best->inv < *prev_inv))
      throw InternalError("invariant did not strictly decrease: " +
                          best->inv.to_string() + " vs " +
                          prev_inv->to_string());
    prev_inv = best->inv;
    trace.invariants.push_back(best->inv);

    // Localize at the chosen point; rows weighting a moved coordinate stop
    // being linear on the local chart.
    for (std::size_t r = 0; r < st.torus.size(); ++r) {
      if (!st.torus_linear[r]) continue;
      for (std::size_t v = 0; v < st.ring->nvars(); ++v)
        if (st.torus[r][v] != 0 && !(*best_point)[v].is_zero())
          st.torus_linear[r] = false;
    }
    for (auto& g : st.gens) g = g.translated(*best_point);
    DivisorSet through;
    for (const auto& c : st.divisors.components()) {
      int idx = st.ring->index_of(c.var);
      if (idx >= 0 && (*best_point)[idx].is_zero()) through.add(c);
    }
    st.divisors = through;

    // Rewrite in the center's completed coordinates and build the chart.
    CoordinateChange completing =
        best->center.completing_change(st.precision);
    std::vector<Polynomial> rewritten;
    rewritten.reserve(st.gens.size());
    for (const auto& g : st.gens)
      rewritten.push_back(substitute(g, completing).poly());

    BlowupChart chart =
        build_chart(best->center.coordinate_form(), st.divisors, st.torus,
                    "s" + std::to_string(st.blowups + 1),
                    problem.options.policy);

    std::vector<Polynomial> transformed;
    transformed.reserve(rewritten.size());
    for (const auto& g : rewritten) {
      if (g.is_zero()) continue;
      if (embedded)
        transformed.push_back(strict_transform(g, chart).first);
      else
        transformed.push_back(controlled_transform(g, chart));
    }

    st.torus_linear.push_back(true);  // the freshly created row
    nlohmann::json rec = {{"step", step},
                          {"point", point_json(*best_point)},
                          {"inv", best->inv.to_json()},
                          {"center", best->center.to_json()},
                          {"chart", chart.to_json()},
                          {"generators", gens_json(transformed)},
                          {"divisors", chart.divisors().to_json()},
                          {"torus", chart.torus_rows()},
                          {"torus_linear", st.torus_linear}};
    trace.steps.push_back(std::move(rec));

    st.gens = std::move(transformed);
    st.ring = chart.chart_ring();
    st.divisors = chart.divisors();
    st.torus = chart.torus_rows();
    last_vertex = chart.vertex_vars();
    st.blowups += 1;
    trace.timings_ms.push_back(
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - step_start)
            .count());
  }

  trace.final_state = {{"vars", st.ring->vars},
                       {"generators", gens_json(st.gens)},
                       {"divisors", st.divisors.to_json()},
                       {"blowups", st.blowups}};
  return trace;
}

}  // namespace

Trace run_principalize(const Problem& problem, const Plan& plan) {
  return run_loop(problem, plan, /*embedded=*/false);
}

Trace run_embedded(const Problem& problem, const Plan& plan) {
  return run_loop(problem, plan, /*embedded=*/true);
}

nlohmann::json run_inv(const Problem& problem) {
  RingPtr ring = problem.ring();
  std::vector<Polynomial> gens = problem.parsed_generators(ring);
  long precision = problem.working_precision(gens);
  DivisorSet divisors = DivisorSet::of_variables(problem.divisor_vars);
  auto r = mill_at_point(ring, gens, divisors, problem.parsed_point(ring),
                         precision, problem.options.policy);
  if (!r) {
    bool all_zero = true;
    for (const auto& g : gens) all_zero = all_zero && g.is_zero();
    if (all_zero)
      return {{"inv", nlohmann::json::array()}, {"note", "zero ideal"}};
    throw UnitIdeal("ideal is trivial at the marked point");
  }
  return {{"inv", r->inv.to_json()}, {"center", r->center.to_json()}};
}

nlohmann::json run_blowup(const Problem& problem, const Plan& plan) {
  RingPtr ring = problem.ring();
  std::vector<Polynomial> gens = problem.parsed_generators(ring);
  long precision = problem.working_precision(gens);
  DivisorSet divisors = DivisorSet::of_variables(problem.divisor_vars);
  std::vector<Coeff> point = problem.parsed_point(ring);

  std::vector<Polynomial> local;
  for (const auto& g : gens) local.push_back(g.translated(point));
  DivisorSet through;
  for (const auto& c : divisors.components()) {
    int idx = ring->index_of(c.var);
    if (idx >= 0 && point[idx].is_zero()) through.add(c);
  }

  nlohmann::json out;
  Center center;
  if (!problem.center.is_null()) {
    center = Center::from_json(problem.center, ring);
  } else {
    auto r = mill_at_point(ring, gens, divisors, point, precision,
                           problem.options.policy);
    if (!r) throw UnitIdeal("nothing to blow up at the marked point");
    center = r->center;
    out["inv"] = r->inv.to_json();
  }
  out["center"] = center.to_json();

  CoordinateChange completing = center.completing_change(precision);
  Center coord = center.coordinate_form();
  BlowupChart chart = build_chart(coord, through, {}, "s1",
                                  problem.options.policy);
  out["chart"] = chart.to_json();

  std::vector<Polynomial> rewritten;
  for (const auto& g : local) {
    Jet rew = substitute(g, completing);
    if (!rew.poly().is_zero()) rewritten.push_back(rew.poly());
  }
  bool admissible =
      is_admissible(ReesAlgebra::of_ideal(ring, rewritten), coord, precision);
  out["admissible"] = admissible;
  nlohmann::json controlled = nlohmann::json::array();
  nlohmann::json strict = nlohmann::json::array();
  for (const auto& g : rewritten) {
    if (admissible)
      controlled.push_back(controlled_transform(g, chart).to_string());
    auto [sp, se] = strict_transform(g, chart);
    strict.push_back({{"poly", sp.to_string()}, {"s_exp", se}});
  }
  out["controlled"] = controlled;
  out["strict"] = strict;

  // Almost-homogeneity report: exact homogeneity and transform identity,
  // plan-supplied witness identities, finite-field probe, and the
  // codimension assertion (recorded, never verified).
  WeightedGrading grading = WeightedGrading::of_center(coord);
  bool homogeneous = is_weighted_homogeneous(rewritten, grading);
  out["homogeneous"] = homogeneous;
  if (homogeneous && rewritten.size() == 1)
    out["transform_identity"] = homogeneous_transform_check(rewritten[0], coord);

  const PlanStep* step = plan.step(0);
  if (step && !rewritten.empty()) {
    const Polynomial& f = rewritten[0];
    bool all_hold = !step->certificates.empty();
    nlohmann::json certs = nlohmann::json::array();
    for (const auto& cert : step->certificates) {
      Polynomial acc(ring);
      for (const auto& term : cert.terms) {
        Polynomial mult = parse_polynomial(term.mult, ring);
        Polynomial sym(ring);
        if (term.sym == "f") {
          sym = f;
        } else if (term.sym.rfind("D_", 0) == 0) {
          int idx = ring->index_of(term.sym.substr(2));
          if (idx < 0) throw UnknownVariable(term.sym.substr(2));
          sym = f.derivative(static_cast<std::size_t>(idx));
        } else {
          throw Error("certificate symbol must be f or D_<var>: " + term.sym,
                      ExitCode::ParseError);
        }
        acc = acc + mult * sym;
      }
      bool holds = acc == parse_polynomial(cert.equals, ring);
      all_hold = all_hold && holds;
      certs.push_back({{"equals", cert.equals}, {"holds", holds}});
    }
    if (!step->certificates.empty()) {
      out["certificates"] = certs;
      out["certified"] = homogeneous && all_hold;
    }
    if (!step->probe_box.empty() && ring->field.is_prime_field())
      out["probe_points"] = singular_probe(f, step->probe_box);
    if (step->assert_codimension)
      out["codimension"] = {{"asserted", true}, {"verified", false}};
  }
  return out;
}

nlohmann::json run_toric(const nlohmann::json& input) {
  Fan fan = Fan::from_json(input.at("fan"));
  std::vector<long> v = input.at("v").get<std::vector<long>>();
  Fan star = star_subdivision(fan, v);
  nlohmann::json out = {{"star", star.to_json()}};
  // Cobordism-cone consistency for a single standard cone.
  if (fan.cones.size() == 1) {
    Cone sigma;
    for (auto i : fan.cones[0]) sigma.rays.push_back(fan.rays[i]);
    bool standard = true;
    for (std::size_t i = 0; i < sigma.rays.size() && standard; ++i)
      for (std::size_t j = 0; j < sigma.rays[i].size(); ++j)
        if (sigma.rays[i][j] != (i == j ? 1 : 0)) standard = false;
    if (standard && sigma.rays.size() == fan.dim) {
      CobordismCone cc = cobordism_cone(sigma, v);
      nlohmann::json tau = nlohmann::json::array();
      for (const auto& r : cc.tau.rays) tau.push_back(r);
      auto projected = project_upper_boundary(cc);
      auto expected = star.canonical();
      bool consistent = projected.size() == expected.size();
      for (std::size_t i = 0; consistent && i < projected.size(); ++i)
        consistent = projected[i] == expected[i];
      nlohmann::json upper = nlohmann::json::array();
      for (const auto& c : projected) {
        nlohmann::json rays = nlohmann::json::array();
        for (const auto& r : c.rays) rays.push_back(r);
        upper.push_back(rays);
      }
      out["cobordism"] = {{"tau", tau},
                          {"projected_upper", upper},
                          {"consistent", consistent}};
    }
  }
  return out;
}

}  // namespace cobord
