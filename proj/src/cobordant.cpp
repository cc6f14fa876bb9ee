#include "cobord/cobordant.hpp"

#include <algorithm>
#include <climits>

#include "cobord/errors.hpp"

namespace cobord {

DivisorSet DivisorSet::of_variables(const std::vector<std::string>& vars) {
  std::vector<DivisorComponent> comps;
  comps.reserve(vars.size());
  for (const auto& v : vars) comps.push_back({v, v, false});
  return DivisorSet(std::move(comps));
}

std::vector<bool> DivisorSet::flags_for(const RingPtr& ring,
                                        DivisorPolicy policy) const {
  std::vector<bool> flags(ring->nvars(), false);
  for (const auto& c : comps_) {
    if (policy == DivisorPolicy::Strict && c.exceptional) continue;
    int idx = ring->index_of(c.var);
    if (idx >= 0) flags[idx] = true;
  }
  return flags;
}

nlohmann::json DivisorSet::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : comps_)
    a.push_back({{"name", c.name}, {"var", c.var}, {"exceptional", c.exceptional}});
  return a;
}

void BlowupChart::corrupt_weight(std::size_t vertex_slot, long w) {
  weights_[vertex_[vertex_slot]] = w;
}

BlowupChart build_chart(const Center& center, const DivisorSet& divisors,
                        const std::vector<std::vector<long>>& torus,
                        const std::string& exceptional_name,
                        DivisorPolicy policy) {
  const RingPtr& src = center.ring();
  // Parameters must already be plain coordinates here.
  std::vector<long> weight_of_source(src->nvars(), 0);
  std::vector<bool> transformed(src->nvars(), false);
  std::vector<long> ws = center.chart_weights();
  for (std::size_t i = 0; i < center.entries().size(); ++i) {
    const Polynomial& p = center.entries()[i].param;
    bool is_var = p.num_terms() == 1 && p.terms().begin()->first.total_degree() == 1 &&
                  p.terms().begin()->second.is_one();
    if (!is_var)
      throw InternalError("build_chart requires coordinate parameters, got " +
                          p.to_string());
    std::size_t v = 0;
    for (std::size_t j = 0; j < src->nvars(); ++j)
      if (p.terms().begin()->first[j] == 1) v = j;
    if (transformed[v])
      throw InternalError("center repeats coordinate " + src->vars[v]);
    transformed[v] = true;
    weight_of_source[v] = ws[i];
  }

  std::vector<std::string> chart_vars;
  chart_vars.reserve(src->nvars() + 1);
  chart_vars.push_back(exceptional_name);
  std::vector<std::size_t> chart_of_source(src->nvars());
  for (std::size_t j = 0; j < src->nvars(); ++j) {
    chart_of_source[j] = chart_vars.size();
    chart_vars.push_back(transformed[j] ? src->vars[j] + "'" : src->vars[j]);
  }

  BlowupChart chart;
  chart.source_ring_ = src;
  chart.chart_ring_ = make_ring(src->field, std::move(chart_vars));
  chart.w_total_ = center.w_total();
  chart.chart_of_source_ = chart_of_source;
  chart.weights_.assign(chart.chart_ring_->nvars(), 0);
  chart.weights_[0] = -1;
  for (std::size_t j = 0; j < src->nvars(); ++j) {
    chart.weights_[chart_of_source[j]] = weight_of_source[j];
    if (transformed[j]) chart.vertex_.push_back(chart_of_source[j]);
  }

  // Divisors: strict transforms keep names; prior exceptionals only under
  // Total; the new exceptional is always a component.
  for (const auto& c : divisors.components()) {
    if (policy == DivisorPolicy::Strict && c.exceptional) continue;
    int idx = src->index_of(c.var);
    if (idx < 0) continue;
    chart.divisors_.add(
        {c.name, chart.chart_ring_->vars[chart_of_source[idx]], c.exceptional});
  }
  chart.divisors_.add({exceptional_name, exceptional_name, true});

  // Torus rows: inherited weights carry over (s gets 0), then the new row.
  for (const auto& row : torus) {
    std::vector<long> nrow(chart.chart_ring_->nvars(), 0);
    for (std::size_t j = 0; j < src->nvars(); ++j)
      nrow[chart_of_source[j]] = row[j];
    chart.torus_.push_back(std::move(nrow));
  }
  chart.torus_.push_back(chart.weights_);
  return chart;
}

nlohmann::json BlowupChart::to_json() const {
  nlohmann::json vars = nlohmann::json::array();
  for (std::size_t i = 1; i < chart_ring_->nvars(); ++i)
    vars.push_back({{"name", chart_ring_->vars[i]}, {"weight", weights_[i]}});
  return {{"exceptional", exceptional_name()},
          {"vars", vars},
          {"torus", torus_},
          {"divisors", divisors_.to_json()}};
}

LaurentPoly full_transform(const Polynomial& f, const BlowupChart& chart) {
  const RingPtr& target = chart.chart_ring();
  std::vector<Polynomial> images;
  images.reserve(f.ring()->nvars());
  for (std::size_t j = 0; j < f.ring()->nvars(); ++j) {
    std::size_t cj = chart.chart_index_of_source()[j];
    Monomial m(target->nvars());
    m[cj] = 1;
    m[chart.s_index()] += static_cast<uint32_t>(
        std::max(0L, chart.weights()[cj]));
    images.push_back(
        Polynomial::of_monomial(target, m, Coeff::one(target->field)));
  }
  Polynomial g = f.substituted(target, images);
  LaurentPoly out;
  if (g.is_zero()) {
    out.poly = g;
    return out;
  }
  long minpow = LONG_MAX;
  for (const auto& [m, c] : g.terms())
    minpow = std::min(minpow, static_cast<long>(m[chart.s_index()]));
  Polynomial reduced(target);
  for (const auto& [m, c] : g.terms()) {
    Monomial nm = m;
    nm[chart.s_index()] -= static_cast<uint32_t>(minpow);
    reduced.add_term(nm, c);
  }
  out.poly = std::move(reduced);
  out.s_offset = minpow;
  return out;
}

Polynomial controlled_transform(const Polynomial& f, const BlowupChart& chart,
                                const Rat& grade) {
  Rat twist_q = grade * chart.w_total();
  if (!twist_q.is_integer())
    throw NonIntegralWeights("grade " + grade.to_string() +
                             " has non-integral twist against w_A = " +
                             chart.w_total().to_string());
  long twist = twist_q.to_long();
  LaurentPoly full = full_transform(f, chart);
  if (full.poly.is_zero()) return full.poly;
  if (full.s_offset < twist)
    throw NonAdmissible("controlled transform of " + f.to_string() +
                        " keeps a positive t-power (" +
                        std::to_string(twist - full.s_offset) + ")");
  long extra = full.s_offset - twist;
  if (extra == 0) return full.poly;
  Monomial m(chart.chart_ring()->nvars());
  m[chart.s_index()] = static_cast<uint32_t>(extra);
  return full.poly * Polynomial::of_monomial(chart.chart_ring(), m,
                                             Coeff::one(chart.chart_ring()->field));
}

std::pair<Polynomial, long> strict_transform(const Polynomial& f,
                                             const BlowupChart& chart) {
  LaurentPoly full = full_transform(f, chart);
  return {full.poly, full.s_offset};
}

ReesAlgebra transform_algebra(const ReesAlgebra& R, const BlowupChart& chart) {
  std::vector<GradedElement> gens;
  gens.reserve(R.generators().size());
  for (const auto& g : R.generators())
    gens.push_back({controlled_transform(g.poly, chart, g.grade), g.grade});
  return ReesAlgebra(chart.chart_ring(), std::move(gens));
}

bool exceptional_principality_check(const Center& center,
                                    const BlowupChart& chart) {
  const auto& vertex = chart.vertex_vars();
  if (vertex.size() != center.entries().size()) return false;
  for (std::size_t i = 0; i < center.entries().size(); ++i) {
    const Polynomial& param = center.entries()[i].param;
    LaurentPoly t = full_transform(param, chart);
    // Pullback must read s^{w_i} * x_i' with w_i >= 1 so that on B_{x_i'}
    // the Q-ideal (x_i^{1/w_i}) becomes (s) times a unit.
    if (t.s_offset < 1) return false;
    if (t.poly.num_terms() != 1) return false;
    const auto& [m, c] = *t.poly.terms().begin();
    if (!c.is_one()) return false;
    if (m.total_degree() != 1) return false;
    bool on_vertex_var = false;
    for (auto v : vertex)
      if (m[v] == 1) on_vertex_var = true;
    if (!on_vertex_var) return false;
  }
  return true;
}

}  // namespace cobord
