#include "cobord/invariant.hpp"

#include <algorithm>
#include <climits>
#include <functional>

#include "cobord/errors.hpp"

namespace cobord {
namespace {

// All exponent vectors over the given variables with |alpha| = total.
void enumerate_alphas(const std::vector<std::size_t>& vars, long total,
                      std::size_t nvars,
                      const std::function<void(const Monomial&)>& emit) {
  Monomial alpha(nvars);
  auto rec = [&](auto&& self, std::size_t pos, long remaining) -> void {
    if (pos + 1 == vars.size()) {
      alpha[vars[pos]] = static_cast<uint32_t>(remaining);
      emit(alpha);
      alpha[vars[pos]] = 0;
      return;
    }
    for (long e = 0; e <= remaining; ++e) {
      alpha[vars[pos]] = static_cast<uint32_t>(e);
      self(self, pos + 1, remaining - e);
    }
    alpha[vars[pos]] = 0;
  };
  if (vars.empty()) {
    if (total == 0) emit(alpha);
    return;
  }
  rec(rec, 0, total);
}

std::vector<std::size_t> all_vars(const RingPtr& ring) {
  std::vector<std::size_t> v(ring->nvars());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

// Largest integer strictly below q.
long strictly_below(const Rat& q) {
  return q.is_integer() ? q.to_long() - 1 : q.floor_long();
}

}  // namespace

std::vector<Polynomial> normalize_generators(std::vector<Polynomial> gens) {
  std::vector<Polynomial> out;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    out.push_back(g.monic());
  }
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    long da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a.to_string() < b.to_string();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  // Drop generators that are exact multiples of another (smaller) one.
  std::vector<Polynomial> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < out.size() && !redundant; ++j) {
      if (i == j) continue;
      if (out[j].total_degree() > out[i].total_degree()) continue;
      if (j > i && out[j].total_degree() == out[i].total_degree()) continue;
      if (out[i].try_divide(out[j])) redundant = true;
    }
    if (!redundant) kept.push_back(out[i]);
  }
  return kept;
}

std::optional<Rat> ord_rees(const ReesAlgebra& R, long precision) {
  std::optional<Rat> best;
  for (const auto& g : R.generators()) {
    Jet j(g.poly, precision);
    if (j.is_zero()) continue;  // exact zero contributes nothing
    long o = j.order_at_origin();
    Rat v = Rat(o) / g.grade;
    if (!best || v < *best) best = v;
  }
  return best;
}

CotangentIdeals cotangent_ideal(const ReesAlgebra& R, const Rat& a1) {
  const RingPtr& ring = R.ring();
  auto vars = all_vars(ring);
  CotangentIdeals out;
  for (const auto& g : R.generators()) {
    if (g.poly.is_zero()) continue;
    Rat ba = g.grade * a1;
    long below_bound = ba.is_integer() ? ba.to_long() : ba.floor_long();
    long upto_bound = strictly_below(ba);
    for (long d = 0; d <= below_bound; ++d) {
      enumerate_alphas(vars, d, ring->nvars(), [&](const Monomial& alpha) {
        Polynomial der = g.poly.derivative(alpha);
        if (der.is_zero()) return;
        out.below.push_back(der);
        if (d <= upto_bound) out.upto.push_back(der);
        if (ba.is_integer() && d == ba.to_long() - 1) out.exact.push_back(der);
      });
    }
  }
  out.exact = normalize_generators(std::move(out.exact));
  out.upto = normalize_generators(std::move(out.upto));
  out.below = normalize_generators(std::move(out.below));
  return out;
}

namespace {

struct ContactComputation {
  std::vector<ContactParam> free_params;
  std::vector<std::size_t> divisorial_coords;
};

// Gaussian reduction of the T-generators' linear parts: pivots run over the
// free columns in ascending order (full-polynomial row operations keep the
// parameters inside the ideal); the rows left over have purely divisorial
// linear parts and mark the tangential divisorial coordinates.
ContactComputation reduce_contact(std::vector<Polynomial> tgens,
                                  const RingPtr& ring,
                                  const std::vector<bool>& divisorial) {
  for (const auto& g : tgens)
    if (!g.constant_term().is_zero())
      throw NoContact("cotangent ideal contains a unit: ord < a1 here");

  ContactComputation out;
  std::vector<bool> used(tgens.size(), false);
  for (std::size_t col = 0; col < ring->nvars(); ++col) {
    if (divisorial[col]) continue;
    std::size_t pivot_row = tgens.size();
    for (std::size_t r = 0; r < tgens.size(); ++r) {
      if (used[r]) continue;
      if (!tgens[r].linear_part()[col].is_zero()) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row == tgens.size()) continue;
    used[pivot_row] = true;
    tgens[pivot_row] =
        tgens[pivot_row].scaled(tgens[pivot_row].linear_part()[col].inverse());
    for (std::size_t r = 0; r < tgens.size(); ++r) {
      if (r == pivot_row) continue;
      Coeff c = tgens[r].linear_part()[col];
      if (!c.is_zero()) tgens[r] = tgens[r] - tgens[pivot_row].scaled(c);
    }
    out.free_params.push_back({tgens[pivot_row], false, col});
  }
  std::vector<bool> seen(ring->nvars(), false);
  for (std::size_t r = 0; r < tgens.size(); ++r) {
    if (used[r]) continue;
    auto row = tgens[r].linear_part();
    for (std::size_t v = 0; v < ring->nvars(); ++v) {
      if (row[v].is_zero()) continue;
      if (!divisorial[v])
        throw InternalError("free column survived contact reduction");
      seen[v] = true;
    }
  }
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    if (seen[v]) out.divisorial_coords.push_back(v);
  return out;
}

MaximalContact contact_from_tgens(std::vector<Polynomial> tgens,
                                  const RingPtr& ring, const Rat& a1,
                                  const std::vector<bool>& divisorial) {
  auto comp = reduce_contact(std::move(tgens), ring, divisorial);
  MaximalContact mc;
  std::vector<QPlus> block;
  for (auto& p : comp.free_params) {
    block.emplace_back(a1, false);
    mc.params.push_back(std::move(p));
  }
  for (auto v : comp.divisorial_coords) {
    mc.params.push_back({Polynomial::variable(ring, v), true, v});
    block.emplace_back(a1, true);
  }
  if (mc.params.empty())
    throw NoContact("no maximal contact: ord differs from a1 here");
  mc.inv1.append_block(std::move(block));
  return mc;
}

}  // namespace

MaximalContact maximal_contact(const ReesAlgebra& R, const Rat& a1,
                               const std::vector<bool>& divisorial,
                               long precision) {
  (void)precision;
  CotangentIdeals T = cotangent_ideal(R, a1);
  return contact_from_tgens(T.exact, R.ring(), a1, divisorial);
}

SupportIdeals support_ideals(const ReesAlgebra& R, const Rat& a1,
                             const MaximalContact& contact, long precision) {
  (void)precision;
  CotangentIdeals T = cotangent_ideal(R, a1);
  SupportIdeals out;
  out.ord_geq = T.upto;

  std::vector<Polynomial> locus = T.upto;
  std::vector<bool> in_contact(R.ring()->nvars(), false);
  for (const auto& p : contact.params) {
    locus.push_back(p.param);
    in_contact[p.pivot] = true;
  }
  for (const auto& g : T.exact)
    for (std::size_t v = 0; v < R.ring()->nvars(); ++v) {
      if (in_contact[v]) continue;
      Polynomial d = g.derivative(v);
      if (!d.is_zero()) locus.push_back(d);
    }
  out.inv1_locus = normalize_generators(std::move(locus));
  return out;
}

std::vector<std::size_t> MillingState::fixed_vars() const {
  std::vector<std::size_t> v;
  for (const auto& b : blocks)
    for (const auto& [pivot, div] : b.coords) v.push_back(pivot);
  return v;
}

MillingState initial_milling_state(const ReesAlgebra& R,
                                   const std::vector<bool>& divisorial,
                                   long precision) {
  MillingState st;
  st.ring = R.ring();
  st.precision = precision;
  st.divisorial = divisorial;
  st.divisorial.resize(st.ring->nvars(), false);
  for (std::size_t i = 0; i < st.ring->nvars(); ++i)
    st.to_original.push_back(Polynomial::variable(st.ring, i));
  for (const auto& g : R.generators())
    if (!g.poly.is_zero())
      st.residual.emplace_back(Jet(g.poly, precision), g.grade);
  return st;
}

MillingState coefficient_ideal(const MillingState& state,
                               const MaximalContact& contact, const Rat& a1) {
  const RingPtr& ring = state.ring;
  MillingState next = state;

  // Coordinate change: each contact parameter becomes the coordinate named
  // after its pivot variable.
  std::vector<Polynomial> new_in_old;
  new_in_old.reserve(ring->nvars());
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    new_in_old.push_back(Polynomial::variable(ring, v));
  for (const auto& p : contact.params) new_in_old[p.pivot] = p.param;
  CoordinateChange change =
      CoordinateChange::make(ring, ring, new_in_old, state.precision);

  std::vector<std::size_t> contact_vars;
  for (const auto& p : contact.params) contact_vars.push_back(p.pivot);

  // Graded Taylor coefficients of each residual generator with respect to
  // the contact block, restricted to its zero locus.
  next.residual.clear();
  for (const auto& [jet, grade] : state.residual) {
    Jet g = substitute(jet, change);
    long bound = strictly_below(grade * a1);
    for (long d = 0; d <= bound; ++d) {
      enumerate_alphas(contact_vars, d, ring->nvars(), [&](const Monomial& alpha) {
        Jet c = g.derivative(alpha).restrict_zero(contact_vars);
        if (c.is_zero() && c.exact()) return;
        Rat new_grade = grade - Rat(d) / a1;
        next.residual.emplace_back(std::move(c), new_grade);
      });
    }
  }

  // Fix the block and compose the bookkeeping back to original coordinates.
  MillingState::Block block;
  block.a = a1;
  for (const auto& p : contact.params) {
    block.coords.emplace_back(p.pivot, p.divisorial);
    next.to_original[p.pivot] = p.param.substituted(ring, state.to_original);
  }
  next.blocks.push_back(std::move(block));
  return next;
}

MillingResult mill(const ReesAlgebra& R, const std::vector<bool>& divisorial,
                   long precision) {
  const RingPtr& ring = R.ring();
  if (ring->field.is_prime_field())
    throw NotCharZero("milling requires characteristic zero");

  for (const auto& g : R.generators())
    if (!g.poly.constant_term().is_zero())
      throw UnitIdeal("generator " + g.poly.to_string() + " is a unit");

  MillingState st = initial_milling_state(R, divisorial, precision);
  InvTuple inv;

  Rat prev_a(0);
  for (std::size_t round = 0; round <= ring->nvars(); ++round) {
    // Zero-mod-precision residuals are treated as zero here; the N-vs-2N
    // stabilization in mill_certified is the certification step.
    std::vector<std::pair<Jet, Rat>> live;
    for (auto& [jet, grade] : st.residual)
      if (!jet.is_zero()) live.emplace_back(std::move(jet), grade);
    st.residual = std::move(live);
    if (st.residual.empty()) break;
    if (round == ring->nvars())
      throw InternalError("milling failed to terminate");

    std::optional<Rat> a;
    for (const auto& [jet, grade] : st.residual) {
      Rat v = Rat(jet.poly().order_at_origin()) / grade;
      if (!a || v < *a) a = v;
    }
    if (!a->is_positive())
      throw InternalError("unit coefficient surfaced during milling");
    if (!st.blocks.empty() && *a <= prev_a)
      throw InternalError("nested orders must strictly increase");
    prev_a = *a;

    // Cotangent generators of the residual algebra at weight a.
    std::vector<Polynomial> tgens;
    auto vars = all_vars(ring);
    for (const auto& [jet, grade] : st.residual) {
      Rat ba = grade * *a;
      if (!ba.is_integer()) continue;
      long d = ba.to_long() - 1;
      enumerate_alphas(vars, d, ring->nvars(), [&](const Monomial& alpha) {
        Polynomial der = jet.poly().derivative(alpha);
        if (!der.is_zero()) tgens.push_back(der);
      });
    }
    tgens = normalize_generators(std::move(tgens));
    MaximalContact contact = contact_from_tgens(tgens, ring, *a, st.divisorial);

    st = coefficient_ideal(st, contact, *a);
    inv.append_block(contact.inv1.entries());
  }

  std::vector<CenterEntry> entries;
  for (const auto& b : st.blocks)
    for (const auto& [pivot, div] : b.coords)
      entries.push_back({st.to_original[pivot], b.a, div});
  return MillingResult{inv, Center(ring, std::move(entries)).normal_form()};
}

MillingResult mill_certified(const ReesAlgebra& R,
                             const std::vector<bool>& divisorial,
                             long precision, int max_doublings) {
  long n = precision;
  for (int i = 0; i < max_doublings; ++i) {
    MillingResult low = mill(R, divisorial, n);
    MillingResult high = mill(R, divisorial, 2 * n);
    if (low.inv == high.inv && low.center == high.center) return high;
    n *= 2;
  }
  throw PrecisionExhausted("milling did not stabilize after " +
                           std::to_string(max_doublings) + " doublings from " +
                           std::to_string(precision));
}

}  // namespace cobord
