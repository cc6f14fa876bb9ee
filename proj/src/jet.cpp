#include "cobord/jet.hpp"

#include <climits>

#include "cobord/errors.hpp"

namespace cobord {

Jet::Jet(const Polynomial& p, long precision) : precision_(precision) {
  bool dropped = false;
  poly_ = p.truncated(precision, &dropped);
  exact_ = !dropped;
}

Jet Jet::inexact(Polynomial p, long precision) {
  Jet j(p, precision);
  j.exact_ = false;
  return j;
}

Jet Jet::operator+(const Jet& o) const {
  long n = std::min(precision_, o.precision_);
  bool dropped = false;
  Jet r;
  r.precision_ = n;
  r.poly_ = (poly_ + o.poly_).truncated(n, &dropped);
  r.exact_ = exact_ && o.exact_ && !dropped;
  return r;
}

Jet Jet::operator-(const Jet& o) const {
  long n = std::min(precision_, o.precision_);
  bool dropped = false;
  Jet r;
  r.precision_ = n;
  r.poly_ = (poly_ - o.poly_).truncated(n, &dropped);
  r.exact_ = exact_ && o.exact_ && !dropped;
  return r;
}

Jet Jet::operator*(const Jet& o) const {
  long n = std::min(precision_, o.precision_);
  bool dropped = false;
  Jet r;
  r.precision_ = n;
  r.poly_ = (poly_ * o.poly_).truncated(n, &dropped);
  r.exact_ = exact_ && o.exact_ && !dropped;
  return r;
}

Jet Jet::scaled(const Coeff& c) const {
  Jet r(*this);
  r.poly_ = poly_.scaled(c);
  return r;
}

Jet Jet::derivative(const Monomial& alpha) const {
  Jet r;
  r.precision_ = precision_ - alpha.total_degree();
  r.poly_ = poly_.derivative(alpha);
  r.exact_ = exact_;
  return r;
}

Jet Jet::restrict_zero(const std::vector<std::size_t>& vars) const {
  Jet r(*this);
  r.poly_ = poly_.restrict_zero(vars);
  return r;
}

long Jet::order_at_origin() const {
  if (poly_.is_zero()) {
    if (!exact_)
      throw PrecisionExhausted(
          "jet vanishes to precision " + std::to_string(precision_) +
          "; order cannot be certified");
    return LONG_MAX;
  }
  return poly_.order_at_origin();
}

namespace {

// Inverts the linear part L (new = L*old + ...) over the coefficient field.
std::vector<std::vector<Coeff>> invert_matrix(
    std::vector<std::vector<Coeff>> m, const Field& field) {
  std::size_t n = m.size();
  std::vector<std::vector<Coeff>> inv(
      n, std::vector<Coeff>(n, Coeff::zero(field)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = Coeff::one(field);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n)
      throw NonInvertibleLinearPart("linear part of coordinate change is singular");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Coeff d = m[col][col].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] = m[col][j] * d;
      inv[col][j] = inv[col][j] * d;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col].is_zero()) continue;
      Coeff f = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] = m[row][j] - f * m[col][j];
        inv[row][j] = inv[row][j] - f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

std::vector<Polynomial> formal_inverse(const RingPtr& old_ring,
                                       const RingPtr& new_ring,
                                       const std::vector<Polynomial>& new_in_old,
                                       long precision) {
  std::size_t n = old_ring->nvars();
  if (new_in_old.size() != n || new_ring->nvars() != n)
    throw InternalError("coordinate change must cover every variable");
  const Field& field = old_ring->field;
  // new_i = sum_j L[i][j] old_j + higher; constant terms must vanish.
  std::vector<std::vector<Coeff>> L;
  L.reserve(n);
  for (const auto& f : new_in_old) {
    if (!f.constant_term().is_zero())
      throw NonInvertibleLinearPart("coordinate change does not fix the origin");
    L.push_back(f.linear_part());
  }
  auto Linv = invert_matrix(L, field);

  // higher_i over the old ring: the nonlinear tail of new_i.
  std::vector<Polynomial> higher;
  higher.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    higher.push_back(new_in_old[i] - new_in_old[i].homogeneous_part(1));

  // Fixed point: old = Linv * (new - higher(old)), gaining one degree per pass.
  std::vector<Polynomial> cur(n, Polynomial(new_ring));
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial row(new_ring);
    for (std::size_t j = 0; j < n; ++j)
      row = row + Polynomial::variable(new_ring, j).scaled(Linv[i][j]);
    cur[i] = row;
  }
  // After pass p the result is correct modulo degree p+1, so each pass only
  // needs arithmetic truncated at its own degree; the final passes carry the
  // full precision.
  for (long pass = 2; pass <= precision; ++pass) {
    long trunc = std::min(pass, precision);
    std::vector<Polynomial> images_h(n, Polynomial(new_ring));
    for (std::size_t i = 0; i < n; ++i)
      images_h[i] = higher[i].substituted(new_ring, cur, trunc);
    std::vector<Polynomial> next(n, Polynomial(new_ring));
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial row(new_ring);
      for (std::size_t j = 0; j < n; ++j) {
        Polynomial contrib =
            Polynomial::variable(new_ring, j) - images_h[j];
        row = row + contrib.scaled(Linv[i][j]);
      }
      next[i] = row.truncated(trunc);
    }
    cur = std::move(next);
  }
  return cur;
}

CoordinateChange CoordinateChange::make(const RingPtr& old_ring,
                                        const RingPtr& new_ring,
                                        std::vector<Polynomial> new_in_old,
                                        long precision) {
  CoordinateChange c;
  c.old_ring_ = old_ring;
  c.new_ring_ = new_ring;
  c.precision_ = precision;
  c.old_in_new_ = formal_inverse(old_ring, new_ring, new_in_old, precision);
  c.new_in_old_ = std::move(new_in_old);
  // Exact composition check: does old_in_new invert new_in_old on the nose?
  c.exact_inverse_ = true;
  for (std::size_t i = 0; i < c.old_in_new_.size() && c.exact_inverse_; ++i) {
    Polynomial composed =
        c.new_in_old_[i].substituted(new_ring, c.old_in_new_);
    if (composed != Polynomial::variable(new_ring, i)) c.exact_inverse_ = false;
  }
  return c;
}

CoordinateChange CoordinateChange::identity(const RingPtr& ring, long precision) {
  std::vector<Polynomial> id;
  id.reserve(ring->nvars());
  for (std::size_t i = 0; i < ring->nvars(); ++i)
    id.push_back(Polynomial::variable(ring, i));
  return make(ring, ring, std::move(id), precision);
}

Jet substitute(const Polynomial& f, const CoordinateChange& change,
               long precision) {
  long n = precision < 0 ? change.precision() : precision;
  bool dropped = false;
  Polynomial p = f.substituted(change.new_ring(), change.old_in_new(), n, &dropped);
  if (dropped || !change.exact_inverse()) return Jet::inexact(p, n);
  return Jet(p, n);
}

Jet substitute(const Jet& f, const CoordinateChange& change) {
  long n = std::min(f.precision(), change.precision());
  Jet j = substitute(f.poly(), change, n);
  if (!f.exact()) j = Jet::inexact(j.poly(), n);
  return j;
}

CoordinateChange invert_change(const CoordinateChange& change, long precision) {
  return CoordinateChange::make(change.new_ring(), change.old_ring(),
                                change.old_in_new(), precision);
}

}  // namespace cobord
