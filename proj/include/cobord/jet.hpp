#pragma once

#include <vector>

#include "cobord/polynomial.hpp"

namespace cobord {

/// Polynomial truncated at a total degree bound, standing in for an element
/// of the completion at the origin. The marked point is always the origin:
/// callers translate first. `exact()` records that no truncation ever
/// dropped a term along the way, so a zero jet is genuinely zero.
class Jet {
 public:
  Jet() = default;
  Jet(const Polynomial& p, long precision);

  const Polynomial& poly() const { return poly_; }
  long precision() const { return precision_; }
  bool exact() const { return exact_; }
  bool is_zero() const { return poly_.is_zero(); }
  const RingPtr& ring() const { return poly_.ring(); }

  Jet operator+(const Jet& o) const;
  Jet operator-(const Jet& o) const;
  Jet operator*(const Jet& o) const;
  Jet scaled(const Coeff& c) const;
  Jet derivative(const Monomial& alpha) const;
  Jet restrict_zero(const std::vector<std::size_t>& vars) const;

  /// Minimal total degree of a surviving term. Throws PrecisionExhausted
  /// when the jet is zero only because of truncation; returns LONG_MAX for
  /// an exactly-zero jet ("infinite order").
  long order_at_origin() const;

  static Jet inexact(Polynomial p, long precision);

 private:
  Polynomial poly_;
  long precision_ = 0;
  bool exact_ = true;
};

/// Invertible formal coordinate change at the origin between two rings with
/// the same variable count. `new_in_old` is exact; `old_in_new` is the
/// formal inverse modulo degree precision+1.
class CoordinateChange {
 public:
  CoordinateChange() = default;

  /// Builds the change from the exact expressions of the new coordinates in
  /// terms of the old ones, inverting formally up to the precision. Throws
  /// NonInvertibleLinearPart.
  static CoordinateChange make(const RingPtr& old_ring, const RingPtr& new_ring,
                               std::vector<Polynomial> new_in_old,
                               long precision);

  static CoordinateChange identity(const RingPtr& ring, long precision);

  const RingPtr& old_ring() const { return old_ring_; }
  const RingPtr& new_ring() const { return new_ring_; }
  long precision() const { return precision_; }
  const std::vector<Polynomial>& new_in_old() const { return new_in_old_; }
  const std::vector<Polynomial>& old_in_new() const { return old_in_new_; }
  /// True when the stored inverse is an exact polynomial inverse (verified
  /// by composing both directions), not merely correct modulo the precision.
  bool exact_inverse() const { return exact_inverse_; }

 private:
  RingPtr old_ring_, new_ring_;
  std::vector<Polynomial> new_in_old_;  // exact, over old_ring
  std::vector<Polynomial> old_in_new_;  // truncated inverse, over new_ring
  long precision_ = 0;
  bool exact_inverse_ = false;
};

/// Rewrites f (over the old ring) in the new coordinates, truncated at the
/// given precision (default: the change's own precision).
Jet substitute(const Polynomial& f, const CoordinateChange& change,
               long precision = -1);
Jet substitute(const Jet& f, const CoordinateChange& change);

/// Formal inverse: swaps the two directions of the change. The returned
/// change's `new_in_old` is the (truncated) old_in_new of the argument.
CoordinateChange invert_change(const CoordinateChange& change, long precision);

/// Solves images = L * x + higher for x given target coordinates; helper
/// exposed for tests. Returns per-new-variable expressions of the old ones.
std::vector<Polynomial> formal_inverse(const RingPtr& old_ring,
                                       const RingPtr& new_ring,
                                       const std::vector<Polynomial>& new_in_old,
                                       long precision);

}  // namespace cobord
