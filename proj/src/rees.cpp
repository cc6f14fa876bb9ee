#include "cobord/rees.hpp"

#include <algorithm>

#include "cobord/errors.hpp"
#include "cobord/parser.hpp"

namespace cobord {

ReesAlgebra::ReesAlgebra(RingPtr ring, std::vector<GradedElement> gens)
    : ring_(std::move(ring)), gens_(std::move(gens)) {
  for (auto& g : gens_) {
    if (!g.grade.is_positive())
      throw Error("Rees generator grade must be positive, got " +
                  g.grade.to_string());
  }
}

ReesAlgebra ReesAlgebra::of_ideal(const RingPtr& ring,
                                  std::vector<Polynomial> generators) {
  std::vector<GradedElement> gens;
  gens.reserve(generators.size());
  for (auto& f : generators) gens.push_back({std::move(f), Rat(1)});
  return ReesAlgebra(ring, std::move(gens));
}

Rat ReesAlgebra::grading_denominator() const {
  if (gens_.empty()) return Rat(1);
  Rat g = gens_[0].grade;
  for (std::size_t i = 1; i < gens_.size(); ++i) g = rat_gcd(g, gens_[i].grade);
  return g.inverse();
}

ReesAlgebra ReesAlgebra::rescaled(const Rat& w0) const {
  if (!w0.is_positive()) throw Error("rescaling factor must be positive");
  std::vector<GradedElement> gens = gens_;
  for (auto& g : gens) g.grade = g.grade * w0;
  return ReesAlgebra(ring_, std::move(gens));
}

Center::Center(RingPtr ring, std::vector<CenterEntry> entries)
    : ring_(std::move(ring)), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (!e.a.is_positive())
      throw Error("center weight a must be positive, got " + e.a.to_string());
    if (e.param.is_zero() || e.param.linear_part() ==
            std::vector<Coeff>(ring_->nvars(), Coeff::zero(ring_->field)))
      throw Error("center parameter must have a nonzero linear part");
    // A divisorial parameter cuts an SNC component, hence is a coordinate
    // hyperplane.
    if (e.divisorial &&
        !(e.param.is_term() && e.param.total_degree() == 1))
      throw Error("divisorial center parameter must be a coordinate, got " +
                  e.param.to_string());
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const CenterEntry& x, const CenterEntry& y) {
                     return x.a < y.a;
                   });
}

Rat Center::w_total() const {
  if (entries_.empty()) return Rat(1);
  Rat w = entries_[0].a;
  for (std::size_t i = 1; i < entries_.size(); ++i)
    w = rat_lcm(w, entries_[i].a);
  return w;
}

std::vector<long> Center::chart_weights() const {
  Rat w = w_total();
  std::vector<long> ws;
  ws.reserve(entries_.size());
  for (const auto& e : entries_) {
    Rat q = w / e.a;
    if (!q.is_integer() || q.to_long() <= 0)
      throw NonIntegralWeights("w_A/a = " + q.to_string() +
                               " is not a positive integer");
    ws.push_back(q.to_long());
  }
  return ws;
}

namespace {

// Chooses a pivot variable (lowest index) for each parameter's linear part,
// eliminating previous pivots first. Returns pivot indices.
std::vector<std::size_t> choose_pivots(const RingPtr& ring,
                                       std::vector<std::vector<Coeff>>& rows) {
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < pivots.size(); ++j) {
      const Coeff& c = rows[i][pivots[j]];
      if (c.is_zero()) continue;
      for (std::size_t v = 0; v < ring->nvars(); ++v)
        rows[i][v] = rows[i][v] - c * rows[j][v];
    }
    std::size_t pivot = ring->nvars();
    for (std::size_t v = 0; v < ring->nvars(); ++v)
      if (!rows[i][v].is_zero()) {
        pivot = v;
        break;
      }
    if (pivot == ring->nvars())
      throw Error("center parameters have dependent linear parts");
    Coeff inv = rows[i][pivot].inverse();
    for (std::size_t v = 0; v < ring->nvars(); ++v)
      rows[i][v] = rows[i][v] * inv;
    pivots.push_back(pivot);
  }
  return pivots;
}

}  // namespace

CoordinateChange Center::completing_change(long precision) const {
  std::vector<std::vector<Coeff>> rows;
  rows.reserve(entries_.size());
  for (const auto& e : entries_) rows.push_back(e.param.linear_part());
  std::vector<std::size_t> pivots = choose_pivots(ring_, rows);

  std::vector<Polynomial> new_in_old;
  new_in_old.reserve(ring_->nvars());
  for (std::size_t v = 0; v < ring_->nvars(); ++v)
    new_in_old.push_back(Polynomial::variable(ring_, v));
  for (std::size_t i = 0; i < entries_.size(); ++i)
    new_in_old[pivots[i]] = entries_[i].param;
  return CoordinateChange::make(ring_, ring_, std::move(new_in_old), precision);
}

std::vector<std::size_t> Center::pivots() const {
  std::vector<std::vector<Coeff>> rows;
  rows.reserve(entries_.size());
  for (const auto& e : entries_) rows.push_back(e.param.linear_part());
  return choose_pivots(ring_, rows);
}

Center Center::coordinate_form() const {
  std::vector<std::size_t> piv = pivots();
  std::vector<CenterEntry> es;
  es.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    es.push_back({Polynomial::variable(ring_, piv[i]), entries_[i].a,
                  entries_[i].divisorial});
  return Center(ring_, std::move(es));
}

MonomialValuation Center::valuation(long precision) const {
  std::vector<std::size_t> piv = pivots();
  MonomialValuation v;
  v.change = completing_change(precision);
  v.weights.assign(ring_->nvars(), Rat(0));
  for (std::size_t i = 0; i < entries_.size(); ++i)
    v.weights[piv[i]] = entries_[i].a.inverse();
  return v;
}

Center Center::normal_form() const {
  if (entries_.empty()) return *this;
  std::vector<CenterEntry> es = entries_;
  for (auto& e : es) e.param = e.param.monic();

  auto pivot_index = [&](const Polynomial& p) {
    auto row = p.linear_part();
    for (std::size_t v = 0; v < row.size(); ++v)
      if (!row[v].is_zero()) return v;
    return row.size();
  };
  std::stable_sort(es.begin(), es.end(),
                   [&](const CenterEntry& x, const CenterEntry& y) {
                     if (x.a != y.a) return x.a < y.a;
                     if (x.divisorial != y.divisorial)
                       return x.divisorial < y.divisorial;
                     return pivot_index(x.param) < pivot_index(y.param);
                   });

  // Forward pass: eliminate earlier pivots (a_j <= a_i keeps the algebra).
  std::vector<std::size_t> pivots(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Coeff c = es[i].param.linear_part()[pivots[j]];
      if (!c.is_zero()) es[i].param = es[i].param - es[j].param.scaled(c);
    }
    std::size_t piv = pivot_index(es[i].param);
    if (piv == ring_->nvars())
      throw Error("center parameters have dependent linear parts");
    pivots[i] = piv;
    es[i].param = es[i].param.scaled(es[i].param.linear_part()[piv].inverse());
  }
  // Back pass inside equal-a blocks only (other direction changes grades).
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      if (es[j].a != es[i].a) continue;
      Coeff c = es[j].param.linear_part()[pivots[i]];
      if (!c.is_zero()) es[j].param = es[j].param - es[i].param.scaled(c);
    }
  // Tail reduction: a non-pivot term of weight >= 1/a_i lies in
  // m^2 + (earlier parameters) up to the valuation, so dropping it keeps the
  // algebra (unit multiples of parameters reduce away here).
  {
    std::vector<Rat> weights(ring_->nvars(), Rat(0));
    for (std::size_t i = 0; i < es.size(); ++i)
      weights[pivots[i]] = es[i].a.inverse();
    for (std::size_t i = 0; i < es.size(); ++i) {
      Rat threshold = es[i].a.inverse();
      Monomial pivot_mono(ring_->nvars());
      pivot_mono[pivots[i]] = 1;
      Polynomial reduced(ring_);
      for (const auto& [m, c] : es[i].param.terms()) {
        Rat nu(0);
        for (std::size_t v = 0; v < ring_->nvars(); ++v)
          if (m[v]) nu += weights[v] * Rat(static_cast<long>(m[v]));
        if (m == pivot_mono || nu < threshold) reduced.add_term(m, c);
      }
      es[i].param = std::move(reduced);
    }
  }
  // Re-sort by pivot within ties so the result is order-canonical.
  std::stable_sort(es.begin(), es.end(),
                   [&](const CenterEntry& x, const CenterEntry& y) {
                     if (x.a != y.a) return x.a < y.a;
                     if (x.divisorial != y.divisorial)
                       return x.divisorial < y.divisorial;
                     return pivot_index(x.param) < pivot_index(y.param);
                   });
  return Center(ring_, std::move(es));
}

bool Center::operator==(const Center& o) const {
  if (!(ring_ == o.ring_ || (ring_ && o.ring_ && *ring_ == *o.ring_)))
    return false;
  if (entries_.size() != o.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& a = entries_[i];
    const auto& b = o.entries_[i];
    if (a.a != b.a || a.divisorial != b.divisorial || a.param != b.param)
      return false;
  }
  return true;
}

nlohmann::json Center::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : entries_) {
    entries.push_back({{"param", e.param.to_string()},
                       {"a", e.a.to_string()},
                       {"divisorial", e.divisorial}});
  }
  return {{"entries", entries}};
}

Center Center::from_json(const nlohmann::json& j, const RingPtr& ring) {
  std::vector<CenterEntry> entries;
  for (const auto& e : j.at("entries")) {
    CenterEntry ce;
    ce.param = parse_polynomial(e.at("param").get<std::string>(), ring);
    ce.a = Rat::parse(e.at("a").get<std::string>());
    ce.divisorial = e.value("divisorial", false);
    entries.push_back(std::move(ce));
  }
  return Center(ring, std::move(entries));
}

std::optional<Rat> valuation_of(const Jet& f, const std::vector<Rat>& weights) {
  if (f.is_zero()) {
    if (!f.exact())
      throw PrecisionExhausted("valuation of a jet vanishing to precision " +
                               std::to_string(f.precision()));
    return std::nullopt;
  }
  std::optional<Rat> best;
  for (const auto& [m, c] : f.poly().terms()) {
    Rat v(0);
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i]) v += weights[i] * Rat(static_cast<long>(m[i]));
    if (!best || v < *best) best = v;
  }
  return best;
}

std::optional<Rat> valuation_of(const Polynomial& f, const Center& center,
                                long precision) {
  if (f.is_zero()) return std::nullopt;
  MonomialValuation val = center.valuation(precision);
  Jet g = substitute(f, val.change, precision);
  return valuation_of(g, val.weights);
}

std::vector<Polynomial> gradation_generators(const Center& center,
                                             const Rat& a, long degree_bound) {
  const RingPtr& ring = center.ring();
  MonomialValuation val = center.valuation(degree_bound + 1);
  if (!a.is_positive()) {
    return {Polynomial::constant(ring, 1)};
  }
  std::vector<std::size_t> weighted;
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    if (!val.weights[v].is_zero()) weighted.push_back(v);

  std::vector<Monomial> hits;
  Monomial cur(ring->nvars());
  // Exhaustive enumeration over the weighted coordinates up to the bound.
  auto rec = [&](auto&& self, std::size_t pos, long remaining, const Rat& nu) -> void {
    if (nu >= a) {
      hits.push_back(cur);
      return;  // supersets are non-minimal
    }
    if (pos == weighted.size()) return;
    for (long e = 0; e <= remaining; ++e) {
      cur[weighted[pos]] = static_cast<uint32_t>(e);
      self(self, pos + 1, remaining - e,
           nu + val.weights[weighted[pos]] * Rat(e));
    }
    cur[weighted[pos]] = 0;
  };
  rec(rec, 0, degree_bound, Rat(0));

  // Minimality sieve by divisibility.
  std::vector<Monomial> minimal;
  for (const auto& m : hits) {
    bool redundant = false;
    for (const auto& d : hits)
      if (!(d == m) && d.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(m);
  }
  std::sort(minimal.begin(), minimal.end());
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (const auto& m : minimal)
    out.push_back(Polynomial::of_monomial(ring, m, Coeff::one(ring->field)));
  return out;
}

bool is_admissible(const ReesAlgebra& R, const Center& center, long precision) {
  MonomialValuation val = center.valuation(precision);
  for (const auto& g : R.generators()) {
    if (g.poly.is_zero()) continue;
    Jet f = substitute(g.poly, val.change, precision);
    auto nu = valuation_of(f, val.weights);
    if (nu && *nu < g.grade) return false;
  }
  return true;
}

long default_precision(const std::vector<Polynomial>& polys) {
  long d = 2;
  for (const auto& p : polys) d = std::max(d, p.total_degree());
  return std::max(8L, 4 * d);
}

}  // namespace cobord
