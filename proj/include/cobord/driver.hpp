#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cobord/cobordant.hpp"
#include "cobord/invariant.hpp"
#include "cobord/toric.hpp"

#include "json.hpp"

namespace cobord {

enum class Mode { Principalize, Embedded, InvOnly, BlowupOnly, Toric };

Mode mode_from_string(const std::string& s);
std::string mode_to_string(Mode m);

struct Options {
  long precision = 0;  // 0 = automatic (4 x max generator degree)
  int max_steps = 24;
  DivisorPolicy policy = DivisorPolicy::Total;
};

/// One resolution problem: field, coordinates, divisor components,
/// generator expressions, and the marked point. A user-supplied center
/// (rees-module JSON form) bypasses milling, which is what any-characteristic
/// blowup-only runs need.
struct Problem {
  Field field = Field::rationals();
  std::vector<std::string> vars;
  std::vector<std::string> divisor_vars;
  std::vector<std::string> generators;
  std::vector<std::string> point;  // empty = origin
  nlohmann::json center;           // optional explicit center
  Mode mode = Mode::Principalize;
  Options options;

  RingPtr ring() const;
  std::vector<Polynomial> parsed_generators(const RingPtr& r) const;
  std::vector<Coeff> parsed_point(const RingPtr& r) const;
  long working_precision(const std::vector<Polynomial>& gens) const;

  static Problem from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Exact witness identity sum_i mult_i * sym_i = rhs, where a symbol is the
/// generator f itself or one of its first divided-power derivatives D_v.
struct Certificate {
  struct Term {
    std::string mult;  // multiplier expression
    std::string sym;   // "f" or "D_<var>"
  };
  std::vector<Term> terms;
  std::string equals;
};

/// Per-step directives: an evaluation point (in post-change chart
/// coordinates), optional coordinate changes "name := expr", homogeneity
/// certificates, a finite-field probe box, and the (unverified) codimension
/// assertion of the almost-homogeneity theorem.
struct PlanStep {
  std::optional<std::vector<std::string>> point;
  std::vector<std::pair<std::string, std::string>> changes;
  std::vector<Certificate> certificates;
  std::vector<std::vector<long>> probe_box;
  bool assert_codimension = false;
};

struct Plan {
  std::vector<PlanStep> steps;
  static Plan from_json(const nlohmann::json& j);
  const PlanStep* step(std::size_t i) const {
    return i < steps.size() ? &steps[i] : nullptr;
  }
};

struct Trace {
  std::string status;
  nlohmann::json steps = nlohmann::json::array();
  nlohmann::json final_state;
  std::vector<InvTuple> invariants;  // per executed blow-up step
  std::vector<double> timings_ms;    // wall time per step

  /// Timings are emitted only on request so that the default trace is
  /// byte-identical across runs of the same Problem and Plan.
  nlohmann::json to_json(bool with_timings = false) const;
};

/// Local invariant computation: translates to the point, adjusts divisor
/// flags (a component counts only where it passes through the point), and
/// runs certified milling. nullopt when the ideal is zero or a unit there.
/// `certified = false` skips the stabilization re-check (used to rank
/// candidate points cheaply before certifying the winner).
std::optional<MillingResult> mill_at_point(
    const RingPtr& ring, const std::vector<Polynomial>& gens,
    const DivisorSet& divisors, const std::vector<Coeff>& point,
    long precision, DivisorPolicy policy, bool certified = true);

/// Principalization loop: mill -> blow up -> controlled transform, until the
/// ideal is exceptional-supported or trivial at every sampled point.
Trace run_principalize(const Problem& problem, const Plan& plan);

/// Embedded-resolution loop with strict transforms; stops when the invariant
/// reaches (1,...,1).
Trace run_embedded(const Problem& problem, const Plan& plan);

/// inv / center at the marked point only.
nlohmann::json run_inv(const Problem& problem);

/// One milling + blow-up step: center, chart and transformed generators.
/// With an explicit center the milling is skipped (any characteristic) and
/// the homogeneity data, plan certificates, and probe results are reported;
/// "certified" is true only when the witness identities verify exactly.
nlohmann::json run_blowup(const Problem& problem, const Plan& plan = Plan{});

/// Toric subcommand payload: star subdivision of a fan at v, plus the
/// cobordism-cone consistency data for a standard cone.
nlohmann::json run_toric(const nlohmann::json& input);

}  // namespace cobord
