#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cobord/qplus.hpp"
#include "cobord/rees.hpp"

namespace cobord {

/// Order of a Rees algebra at the origin: min over generators of
/// ord(f_j)/b_j. nullopt = infinity (trivial algebra / all generators zero).
std::optional<Rat> ord_rees(const ReesAlgebra& R, long precision);

/// The three cotangent ideals of R at weight a1, as cleaned generator lists
/// (monic, deduplicated, single-divisor reduced).
///   exact: |alpha| =  b_j*a1 - 1  (only integral b_j*a1 contribute)
///   upto:  |alpha| <  b_j*a1     (cuts the locus ord >= a1)
///   below: |alpha| <= b_j*a1     (cuts the locus ord >  a1)
struct CotangentIdeals {
  std::vector<Polynomial> exact;
  std::vector<Polynomial> upto;
  std::vector<Polynomial> below;
};

CotangentIdeals cotangent_ideal(const ReesAlgebra& R, const Rat& a1);

/// One maximal-contact parameter: a reduced element of T^{1/a1} (free case)
/// or a divisorial coordinate tangential to it. `pivot` is the variable the
/// parameter replaces in the completed coordinate system.
struct ContactParam {
  Polynomial param;
  bool divisorial = false;
  std::size_t pivot = 0;
};

struct MaximalContact {
  std::vector<ContactParam> params;  // free (by pivot) first, then divisorial
  InvTuple inv1;                     // a1 * (1,...,1,1+,...,1+)
};

/// Maximal contact of R at the origin; requires ord_0(R) = a1 (NoContact
/// otherwise). Free parameters come from Gaussian reduction of the linear
/// parts of T^{1/a1} with lowest-index pivots; divisorial coordinates are
/// those visible in the purely-divisorial part of the reduced linear span.
MaximalContact maximal_contact(const ReesAlgebra& R, const Rat& a1,
                               const std::vector<bool>& divisorial,
                               long precision);

/// Generator lists for supp ord(R, >= a1) and supp inv^1(R, b1).
struct SupportIdeals {
  std::vector<Polynomial> ord_geq;
  std::vector<Polynomial> inv1_locus;
};

SupportIdeals support_ideals(const ReesAlgebra& R, const Rat& a1,
                             const MaximalContact& contact, long precision);

/// Working state of the milling recursion. Coordinates keep their names
/// across the nested coordinate changes; fixed blocks list pivot variables
/// of the contacts found so far, and residual generators never involve
/// fixed variables.
struct MillingState {
  struct Block {
    std::vector<std::pair<std::size_t, bool>> coords;  // (pivot, divisorial)
    Rat a;
  };

  RingPtr ring;
  std::vector<Block> blocks;
  std::vector<std::pair<Jet, Rat>> residual;  // (jet, grade)
  std::vector<Polynomial> to_original;        // current coord in original vars
  std::vector<bool> divisorial;               // per current coordinate
  long precision = 0;

  std::vector<std::size_t> fixed_vars() const;
};

MillingState initial_milling_state(const ReesAlgebra& R,
                                   const std::vector<bool>& divisorial,
                                   long precision);

/// One milling step: fixes the contact block at grade 1/a1 and replaces the
/// residual with the graded Taylor coefficients c_{j,alpha} t^{b_j-|a|/a1}
/// (|alpha| < b_j*a1) restricted to the contact's zero locus.
MillingState coefficient_ideal(const MillingState& state,
                               const MaximalContact& contact, const Rat& a1);

struct MillingResult {
  InvTuple inv;
  Center center;  // in the original coordinates, normal form
};

/// Runs the milling recursion at a single precision. Zero-mod-precision
/// residuals are treated as zero; certification is mill_certified's job.
/// Throws NotCharZero over F_p and UnitIdeal when a generator is a unit.
MillingResult mill(const ReesAlgebra& R, const std::vector<bool>& divisorial,
                   long precision);

/// Milling with the stabilization re-check: results at N and 2N must agree;
/// otherwise the precision doubles, up to the escalation budget, and
/// PrecisionExhausted is thrown.
MillingResult mill_certified(const ReesAlgebra& R,
                             const std::vector<bool>& divisorial,
                             long precision, int max_doublings = 4);

/// Cleans a generator list: drop zeros, make monic, deduplicate, drop
/// generators that are polynomial multiples of another one, sort.
std::vector<Polynomial> normalize_generators(std::vector<Polynomial> gens);

}  // namespace cobord
