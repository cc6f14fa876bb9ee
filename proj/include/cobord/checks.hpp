#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cobord/driver.hpp"

namespace cobord {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double ms = 0.0;
};

/// Shipped regression corpus (characteristic-zero problems used by the
/// cross-module suites).
std::vector<Problem> regression_corpus();

/// Module property suites (the cross-cutting invariants of every module),
/// randomized where stated; the seed fixes all sampling.
std::vector<CheckResult> run_property_checks(std::uint64_t seed);

/// The ten acceptance criteria, exact-value regressions plus property
/// batches, each as one pass/fail entry.
std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed);

}  // namespace cobord
