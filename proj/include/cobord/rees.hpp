#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cobord/jet.hpp"
#include "cobord/polynomial.hpp"
#include "cobord/rational.hpp"

#include "json.hpp"

namespace cobord {

/// Homogeneous generator f * t^grade of a rational Rees algebra.
struct GradedElement {
  Polynomial poly;
  Rat grade;
};

/// Finitely generated rational Rees algebra O_X[f_j t^{b_j}].
class ReesAlgebra {
 public:
  explicit ReesAlgebra(RingPtr ring) : ring_(std::move(ring)) {}
  ReesAlgebra(RingPtr ring, std::vector<GradedElement> gens);

  static ReesAlgebra of_ideal(const RingPtr& ring,
                              std::vector<Polynomial> generators);
  static ReesAlgebra trivial(const RingPtr& ring) { return ReesAlgebra(ring); }

  const RingPtr& ring() const { return ring_; }
  const std::vector<GradedElement>& generators() const { return gens_; }
  bool is_trivial() const { return gens_.empty(); }

  /// w_R: the smallest positive rational with every grade in (1/w_R)*Z.
  Rat grading_denominator() const;

  /// The t -> t^w0 rescaling: grades multiply by w0, polynomials unchanged.
  ReesAlgebra rescaled(const Rat& w0) const;

 private:
  RingPtr ring_;
  std::vector<GradedElement> gens_;
};

struct CenterEntry {
  Polynomial param;
  Rat a;
  bool divisorial = false;
};

/// Monomial valuation attached to a center: the completing coordinate change
/// plus per-variable weights (1/a_i on the center coordinates, 0 elsewhere).
struct MonomialValuation {
  CoordinateChange change;
  std::vector<Rat> weights;
};

/// Weighted partial coordinate system (x_i, a_i) standing for the integrally
/// closed algebra O_X[x_1 t^{1/a_1}, ...]^int. Entries are kept with
/// a_1 <= ... <= a_k and independent linear parts.
class Center {
 public:
  Center() = default;
  explicit Center(RingPtr ring) : ring_(std::move(ring)) {}
  Center(RingPtr ring, std::vector<CenterEntry> entries);

  const RingPtr& ring() const { return ring_; }
  const std::vector<CenterEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// w_A = lcm(a_1, ..., a_k): the smallest positive rational with every
  /// w_A / a_i a positive integer.
  Rat w_total() const;

  /// Blow-up weights w_i = w_A / a_i; throws NonIntegralWeights if corrupt.
  std::vector<long> chart_weights() const;

  /// Coordinate change completing the parameters to a full system: each
  /// parameter becomes the coordinate named after its pivot variable.
  CoordinateChange completing_change(long precision) const;

  /// Pivot variable index of each entry in the completed system.
  std::vector<std::size_t> pivots() const;

  /// The center as seen in its own completed coordinates: every parameter
  /// replaced by its pivot variable (the form build_chart expects).
  Center coordinate_form() const;

  /// Valuation data at the given jet precision.
  MonomialValuation valuation(long precision) const;

  /// Canonical representative: entries sorted by (a, divisorial, pivot),
  /// linear parts reduced by Gaussian elimination (respecting grades).
  Center normal_form() const;

  bool operator==(const Center& o) const;

  nlohmann::json to_json() const;
  static Center from_json(const nlohmann::json& j, const RingPtr& ring);

 private:
  RingPtr ring_;
  std::vector<CenterEntry> entries_;
};

/// Weighted order min over surviving terms of sum(exponent * weight).
/// Returns nullopt (= infinity) for the exactly-zero jet; throws
/// PrecisionExhausted when the jet vanishes only up to truncation.
std::optional<Rat> valuation_of(const Jet& f, const std::vector<Rat>& weights);

/// Valuation of f at the center: rewrites f through the completing change
/// first. Grade convention nu(x_i) = 1/a_i.
std::optional<Rat> valuation_of(const Polynomial& f, const Center& center,
                                long precision);

/// Minimal monomial generators of the gradation ideal
/// A_a = { f : nu(f) >= a } among monomials of total degree <= degree_bound,
/// in the center's completed coordinates.
std::vector<Polynomial> gradation_generators(const Center& center,
                                             const Rat& a, long degree_bound);

/// Admissibility I*t in A^int: every generator satisfies nu(f_j) >= b_j.
bool is_admissible(const ReesAlgebra& R, const Center& center, long precision);

/// Default working precision for the given polynomials: four times the
/// maximal generator degree (at least 8).
long default_precision(const std::vector<Polynomial>& polys);

}  // namespace cobord
