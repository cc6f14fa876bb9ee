#pragma once

#include <vector>

#include "cobord/rational.hpp"

#include "json.hpp"

namespace cobord {

/// Strongly convex simplicial cone given by primitive integer ray generators.
struct Cone {
  std::vector<std::vector<long>> rays;

  std::size_t dim_ambient() const { return rays.empty() ? 0 : rays[0].size(); }
  /// Canonical form: primitive rays, sorted.
  Cone normalized() const;
  bool operator==(const Cone& o) const;
};

/// Membership of an integer vector in the cone (nonnegative combination);
/// `strict` asks for the relative interior (all coefficients positive).
bool cone_contains(const Cone& cone, const std::vector<long>& v,
                   bool strict = false);

/// Fan as a list of maximal simplicial cones over a shared ray list.
struct Fan {
  std::size_t dim = 0;
  std::vector<std::vector<long>> rays;
  std::vector<std::vector<std::size_t>> cones;  // ray-index lists

  static Fan of_cone(const Cone& c);
  std::vector<Cone> maximal_cones() const;
  /// Canonical set of normalized maximal cones, for equality tests.
  std::vector<Cone> canonical() const;

  nlohmann::json to_json() const;
  static Fan from_json(const nlohmann::json& j);
};

/// Star subdivision of the fan at v: cones not containing v survive; each
/// cone containing v is replaced by the cones spanned by v and its facets
/// not containing v. Throws VNotInSupport when v misses the support.
Fan star_subdivision(const Fan& fan, const std::vector<long>& v);

/// Full cobordant blow-up of the (standard-basis) cone sigma at an interior
/// integer vector v: the regular cone tau = <e_1,...,e_n, v + e_{n+1}> in
/// Z^{n+1}, with upper-boundary faces visible from above, lower boundary
/// sigma, and projection along e_{n+1}.
struct CobordismCone {
  Cone tau;
  std::vector<Cone> upper_faces;
  Cone lower;
};

CobordismCone cobordism_cone(const Cone& sigma, const std::vector<long>& v);

/// Projection of the upper boundary along e_{n+1}: drops the last
/// coordinate of every ray.
std::vector<Cone> project_upper_boundary(const CobordismCone& cc);

}  // namespace cobord
