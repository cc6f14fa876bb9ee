#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cobord/rees.hpp"

#include "json.hpp"

namespace cobord {

enum class DivisorPolicy { Total, Strict };

struct DivisorComponent {
  std::string name;
  std::string var;  // chart variable cutting the component
  bool exceptional = false;
};

/// Named SNC divisor components, each a coordinate hyperplane in the chart
/// where it is visible.
class DivisorSet {
 public:
  DivisorSet() = default;
  explicit DivisorSet(std::vector<DivisorComponent> comps)
      : comps_(std::move(comps)) {}

  static DivisorSet of_variables(const std::vector<std::string>& vars);

  const std::vector<DivisorComponent>& components() const { return comps_; }
  void add(DivisorComponent c) { comps_.push_back(std::move(c)); }
  bool empty() const { return comps_.empty(); }

  /// Per-variable divisorial flags for the given ring, honoring the policy:
  /// Strict ignores exceptional components.
  std::vector<bool> flags_for(const RingPtr& ring, DivisorPolicy policy) const;

  nlohmann::json to_json() const;

 private:
  std::vector<DivisorComponent> comps_;
};

/// Laurent bookkeeping for transforms: the value is s^offset * poly, with
/// poly not divisible by s.
struct LaurentPoly {
  Polynomial poly;
  long s_offset = 0;
};

/// Single ambient chart of the full cobordant blow-up B at a center: the
/// exceptional s = t^-1 first, then the source variables, transformed ones
/// primed and carrying torus weight w_i = w_A / a_i.
class BlowupChart {
 public:
  BlowupChart() = default;

  const RingPtr& source_ring() const { return source_ring_; }
  const RingPtr& chart_ring() const { return chart_ring_; }
  const std::string& exceptional_name() const {
    return chart_ring_->vars[0];
  }
  std::size_t s_index() const { return 0; }

  /// w_A (rescaling exponent of the exceptional twist); rational in general,
  /// integral whenever every a_i >= 1.
  const Rat& w_total() const { return w_total_; }
  /// New-row torus weight per chart variable: -1 on s, w_i on transformed
  /// variables, 0 on untouched ones.
  const std::vector<long>& weights() const { return weights_; }
  /// Chart index of each source variable.
  const std::vector<std::size_t>& chart_index_of_source() const {
    return chart_of_source_;
  }
  /// Chart indices of the transformed variables: the vertex ideal.
  const std::vector<std::size_t>& vertex_vars() const { return vertex_; }
  const DivisorSet& divisors() const { return divisors_; }
  /// Torus weight rows in creation order (the new row last).
  const std::vector<std::vector<long>>& torus_rows() const { return torus_; }

  nlohmann::json to_json() const;

  // Test hook for negative controls on corrupted weight data.
  void corrupt_weight(std::size_t vertex_slot, long w);

  friend BlowupChart build_chart(const Center& center,
                                 const DivisorSet& divisors,
                                 const std::vector<std::vector<long>>& torus,
                                 const std::string& exceptional_name,
                                 DivisorPolicy policy);

 private:
  RingPtr source_ring_, chart_ring_;
  Rat w_total_ = Rat(1);
  std::vector<long> weights_;
  std::vector<std::size_t> chart_of_source_;
  std::vector<std::size_t> vertex_;
  DivisorSet divisors_;
  std::vector<std::vector<long>> torus_;
};

/// Builds the single chart of the full cobordant blow-up at the center.
/// Preconditions: the center is in normal form and every parameter is a
/// plain coordinate (callers apply the completing change first).
/// Divisors update: strict transforms keep their names, the new exceptional
/// V(s) is added; prior exceptional components survive only under Total.
BlowupChart build_chart(const Center& center, const DivisorSet& divisors,
                        const std::vector<std::vector<long>>& torus = {},
                        const std::string& exceptional_name = "s1",
                        DivisorPolicy policy = DivisorPolicy::Total);

/// Full transform: f rewritten in chart variables (x_i = x_i' s^{w_i}) with
/// the maximal common s-power factored into the offset.
LaurentPoly full_transform(const Polynomial& f, const BlowupChart& chart);

/// Controlled transform sigma^c(f) = s^{-w_A * grade} * full transform.
/// Throws NonAdmissible when a positive t-power remains.
Polynomial controlled_transform(const Polynomial& f, const BlowupChart& chart,
                                const Rat& grade = Rat(1));

/// Strict transform: full transform with the maximal s-power removed;
/// returns the factored exponent alongside.
std::pair<Polynomial, long> strict_transform(const Polynomial& f,
                                             const BlowupChart& chart);

/// Controlled transform of a Rees algebra: every generator transformed at
/// its own grade, grades unchanged.
ReesAlgebra transform_algebra(const ReesAlgebra& R, const BlowupChart& chart);

/// Lemma-divisor check: on each localization B_{x'_i} the pulled-back
/// center ideal is (s) up to unit.
bool exceptional_principality_check(const Center& center,
                                    const BlowupChart& chart);

}  // namespace cobord
