#pragma once

#include <utility>
#include <vector>

#include "cobord/cobordant.hpp"
#include "cobord/rees.hpp"

namespace cobord {

/// Per-variable non-negative integer weights (the rescaled center weights
/// w_i on center coordinates, 0 elsewhere).
struct WeightedGrading {
  std::vector<long> weights;

  long grade_of(const Monomial& m) const;

  /// Grading induced by a center whose parameters are plain coordinates:
  /// weight w_A/a_i on each center coordinate.
  static WeightedGrading of_center(const Center& center);
};

/// Sum of the terms of minimal weighted grade, with that grade.
std::pair<Polynomial, long> initial_form(const Polynomial& f,
                                         const WeightedGrading& grading);

/// True iff every generator equals its initial form.
bool is_weighted_homogeneous(const std::vector<Polynomial>& ideal,
                             const WeightedGrading& grading);

/// For weighted-homogeneous f: checks that the strict transform under the
/// center's cobordant blow-up is f itself in primed variables with the
/// s-exponent equal to the grade. Throws NotHomogeneous otherwise.
bool homogeneous_transform_check(const Polynomial& f, const Center& center);

/// Brute-force Jacobian probe over a finite field: all points of the box
/// where f and every first divided-power derivative vanish. The box lists
/// candidate residues per variable.
std::vector<std::vector<long>> singular_probe(
    const Polynomial& f, const std::vector<std::vector<long>>& box);

}  // namespace cobord
