#include "cobord/polynomial.hpp"

#include <algorithm>
#include <climits>
#include <ostream>
#include <sstream>

#include "cobord/errors.hpp"

namespace cobord {

int PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(Field field, std::vector<std::string> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        throw Error("duplicate variable name '" + vars[i] + "'");
  return std::make_shared<const PolyRing>(PolyRing{field, std::move(vars)});
}

void Polynomial::check_same_ring(const Polynomial& o) const {
  if (ring_ == o.ring_) return;
  if (ring_ && o.ring_ && *ring_ == *o.ring_) return;
  throw InternalError("polynomial operands live in different rings");
}

void Polynomial::add_term(const Monomial& m, const Coeff& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    Coeff s = it->second + c;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = s;
  }
}

Polynomial Polynomial::constant(const RingPtr& ring, const Coeff& c) {
  Polynomial p(ring);
  p.add_term(Monomial(ring->nvars()), c);
  return p;
}

Polynomial Polynomial::constant(const RingPtr& ring, long c) {
  return constant(ring, Coeff(ring->field, c));
}

Polynomial Polynomial::constant(const RingPtr& ring, const Rat& c) {
  return constant(ring, Coeff(ring->field, c));
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t index) {
  if (index >= ring->nvars()) throw InternalError("variable index out of range");
  Monomial m(ring->nvars());
  m[index] = 1;
  return of_monomial(ring, m, Coeff::one(ring->field));
}

Polynomial Polynomial::of_monomial(const RingPtr& ring, const Monomial& m,
                                   const Coeff& c) {
  Polynomial p(ring);
  p.add_term(m, c);
  return p;
}

Coeff Polynomial::constant_term() const {
  auto it = terms_.find(Monomial(ring_->nvars()));
  return it == terms_.end() ? Coeff::zero(ring_->field) : it->second;
}

long Polynomial::total_degree() const {
  long d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

long Polynomial::order_at_origin() const {
  if (terms_.empty()) return LONG_MAX;
  return terms_.begin()->first.total_degree();  // map order is degree-first
}

bool Polynomial::uses_variable_outside(const std::vector<bool>& allowed) const {
  for (const auto& [m, c] : terms_)
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i] > 0 && !allowed[i]) return true;
  return false;
}

bool Polynomial::uses_variable(std::size_t index) const {
  for (const auto& [m, c] : terms_)
    if (m[index] > 0) return true;
  return false;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same_ring(o);
  Polynomial r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_same_ring(o);
  Polynomial r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same_ring(o);
  Polynomial r(ring_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Polynomial Polynomial::scaled(const Coeff& c) const {
  Polynomial r(ring_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
  return r;
}

Polynomial Polynomial::pow(unsigned long e) const {
  Polynomial r = constant(ring_, 1);
  Polynomial base(*this);
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!(ring_ == o.ring_ || (ring_ && o.ring_ && *ring_ == *o.ring_)))
    return false;
  return terms_ == o.terms_;
}

Polynomial Polynomial::derivative(const Monomial& alpha) const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) {
    if (!alpha.divides(m)) continue;
    mpz_class factor = 1;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (alpha[i]) factor *= binomial(m[i], alpha[i]);
    Coeff k = c * Coeff(ring_->field, Rat(mpq_class(factor)));
    r.add_term(alpha.quotient_of(m), k);
  }
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Monomial alpha(ring_->nvars());
  alpha[var] = 1;
  return derivative(alpha);
}

Polynomial Polynomial::homogeneous_part(long degree) const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_)
    if (m.total_degree() == degree) r.terms_.emplace(m, c);
  return r;
}

std::vector<Coeff> Polynomial::linear_part() const {
  std::vector<Coeff> row(ring_->nvars(), Coeff::zero(ring_->field));
  for (const auto& [m, c] : terms_) {
    if (m.total_degree() != 1) continue;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i] == 1) row[i] = c;
  }
  return row;
}

Polynomial Polynomial::restrict_zero(const std::vector<std::size_t>& vars) const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) {
    bool keep = true;
    for (auto v : vars)
      if (m[v] > 0) {
        keep = false;
        break;
      }
    if (keep) r.terms_.emplace(m, c);
  }
  return r;
}

Polynomial Polynomial::substituted(const RingPtr& target,
                                   const std::vector<Polynomial>& images,
                                   long trunc, bool* dropped) const {
  if (images.size() != ring_->nvars())
    throw InternalError("substitution image count mismatch");
  Polynomial acc(target);
  // Per-variable power cache; powers are themselves truncated.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t v, uint32_t e) -> const Polynomial& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= e) {
      Polynomial next = cache.back() * images[v];
      if (trunc >= 0) next = next.truncated(trunc, dropped);
      cache.push_back(std::move(next));
    }
    return cache[e];
  };
  for (const auto& [m, c] : terms_) {
    Polynomial term = Polynomial::constant(target, 1);
    for (std::size_t v = 0; v < m.nvars(); ++v) {
      if (m[v] == 0) continue;
      term = term * power(v, m[v]);
      if (trunc >= 0) term = term.truncated(trunc, dropped);
    }
    acc = acc + term.scaled(c);
  }
  if (trunc >= 0) acc = acc.truncated(trunc, dropped);
  return acc;
}

Polynomial Polynomial::translated(const std::vector<Coeff>& point) const {
  std::vector<Polynomial> images;
  images.reserve(ring_->nvars());
  for (std::size_t i = 0; i < ring_->nvars(); ++i) {
    Polynomial img = variable(ring_, i);
    if (!point[i].is_zero()) img = img + constant(ring_, point[i]);
    images.push_back(std::move(img));
  }
  return substituted(ring_, images);
}

Coeff Polynomial::evaluate(const std::vector<Coeff>& point) const {
  Coeff acc = Coeff::zero(ring_->field);
  for (const auto& [m, c] : terms_) {
    Coeff t = c;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (m[i]) t = t * point[i].pow(m[i]);
    acc = acc + t;
  }
  return acc;
}

Polynomial Polynomial::truncated(long n, bool* dropped) const {
  Polynomial r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m.total_degree() <= n)
      r.terms_.emplace(m, c);
    else if (dropped)
      *dropped = true;
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(terms_.begin()->second.inverse());
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return Monomial(ring_->nvars());
  Monomial g = terms_.begin()->first;
  for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
  return g;
}

std::optional<Polynomial> Polynomial::try_divide(const Polynomial& d) const {
  check_same_ring(d);
  if (d.is_zero()) return std::nullopt;
  Polynomial rem(*this), quot(ring_);
  const auto& dlead = *d.terms_.rbegin();  // largest term in grlex
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms_.rbegin();
    if (!dlead.first.divides(rlead.first)) return std::nullopt;
    Monomial qm = dlead.first.quotient_of(rlead.first);
    Coeff qc = rlead.second / dlead.second;
    Polynomial step = of_monomial(ring_, qm, qc);
    quot = quot + step;
    rem = rem - step * d;
  }
  return quot;
}

Polynomial Polynomial::renamed(const RingPtr& target) const {
  if (target->nvars() != ring_->nvars())
    throw InternalError("renamed() requires equal variable counts");
  Polynomial r(target);
  for (const auto& [m, c] : terms_)
    r.terms_.emplace(m, Coeff(target->field, ring_->field.is_rationals()
                                                 ? c.rational()
                                                 : Rat(c.residue())));
  return r;
}

Polynomial Polynomial::permuted(const RingPtr& target,
                                const std::vector<std::size_t>& perm) const {
  Polynomial r(target);
  for (const auto& [m, c] : terms_) {
    Monomial nm(target->nvars());
    for (std::size_t i = 0; i < m.nvars(); ++i) nm[perm[i]] = m[i];
    r.add_term(nm, c);
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.to_string();
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs = cs.substr(1);
    if (!first || negative) os << (negative ? "-" : "+");
    first = false;
    bool unit_coeff = (cs == "1");
    bool printed = false;
    if (!unit_coeff || m.is_one()) {
      os << cs;
      printed = true;
    }
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (printed) os << "*";
      os << ring_->vars[i];
      if (m[i] > 1) os << "^" << m[i];
      printed = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.to_string();
}

}  // namespace cobord
