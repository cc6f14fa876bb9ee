#include "cobord/graded.hpp"

#include <climits>

#include "cobord/errors.hpp"

namespace cobord {

long WeightedGrading::grade_of(const Monomial& m) const {
  long g = 0;
  for (std::size_t i = 0; i < m.nvars(); ++i)
    g += static_cast<long>(m[i]) * weights[i];
  return g;
}

WeightedGrading WeightedGrading::of_center(const Center& center) {
  const RingPtr& ring = center.ring();
  WeightedGrading g;
  g.weights.assign(ring->nvars(), 0);
  std::vector<long> ws = center.chart_weights();
  for (std::size_t i = 0; i < center.entries().size(); ++i) {
    const Polynomial& p = center.entries()[i].param;
    if (p.num_terms() != 1 || p.total_degree() != 1)
      throw InternalError("weighted grading needs coordinate parameters");
    for (std::size_t v = 0; v < ring->nvars(); ++v)
      if (p.terms().begin()->first[v] == 1) g.weights[v] = ws[i];
  }
  return g;
}

std::pair<Polynomial, long> initial_form(const Polynomial& f,
                                         const WeightedGrading& grading) {
  if (f.is_zero()) throw Error("initial form of the zero polynomial");
  long best = LONG_MAX;
  for (const auto& [m, c] : f.terms())
    best = std::min(best, grading.grade_of(m));
  Polynomial in(f.ring());
  for (const auto& [m, c] : f.terms())
    if (grading.grade_of(m) == best) in.add_term(m, c);
  return {in, best};
}

bool is_weighted_homogeneous(const std::vector<Polynomial>& ideal,
                             const WeightedGrading& grading) {
  for (const auto& f : ideal) {
    if (f.is_zero()) continue;
    if (initial_form(f, grading).first != f) return false;
  }
  return true;
}

bool homogeneous_transform_check(const Polynomial& f, const Center& center) {
  WeightedGrading grading = WeightedGrading::of_center(center);
  auto [in, grade] = initial_form(f, grading);
  if (in != f)
    throw NotHomogeneous("polynomial is not weighted-homogeneous for the center");
  BlowupChart chart = build_chart(center, DivisorSet());
  auto [strict, s_exp] = strict_transform(f, chart);
  if (s_exp != grade) return false;
  // Expected: f with each source variable sent to its chart variable.
  Polynomial expected =
      f.permuted(chart.chart_ring(), chart.chart_index_of_source());
  return strict == expected;
}

std::vector<std::vector<long>> singular_probe(
    const Polynomial& f, const std::vector<std::vector<long>>& box) {
  const RingPtr& ring = f.ring();
  if (!ring->field.is_prime_field())
    throw Error("singular_probe needs a finite coefficient field");
  if (box.size() != ring->nvars())
    throw Error("probe box must list residues per variable");
  for (const auto& row : box)
    if (row.empty()) throw Error("probe box has an empty coordinate range");

  std::vector<Polynomial> checks{f};
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    checks.push_back(f.derivative(v));

  std::vector<std::vector<long>> hits;
  std::vector<std::size_t> idx(box.size(), 0);
  while (true) {
    std::vector<Coeff> point;
    point.reserve(box.size());
    for (std::size_t v = 0; v < box.size(); ++v)
      point.emplace_back(ring->field, box[v][idx[v]]);
    bool all_zero = true;
    for (const auto& g : checks)
      if (!g.evaluate(point).is_zero()) {
        all_zero = false;
        break;
      }
    if (all_zero) {
      std::vector<long> p;
      for (const auto& c : point) p.push_back(c.residue());
      hits.push_back(std::move(p));
    }
    std::size_t v = 0;
    while (v < box.size() && ++idx[v] == box[v].size()) idx[v++] = 0;
    if (v == box.size()) break;
  }
  return hits;
}

}  // namespace cobord
