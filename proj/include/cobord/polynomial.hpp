#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cobord/field.hpp"
#include "cobord/monomial.hpp"

namespace cobord {

/// Immutable ambient ring data: a coefficient field and an ordered list of
/// variable names. Shared by all values living in the same coordinates.
struct PolyRing {
  Field field;
  std::vector<std::string> vars;

  std::size_t nvars() const { return vars.size(); }
  /// Index of a variable name, or -1.
  int index_of(const std::string& name) const;
  bool operator==(const PolyRing& o) const {
    return field == o.field && vars == o.vars;
  }
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(Field field, std::vector<std::string> vars);

/// Sparse multivariate polynomial with exact coefficients. Terms are kept in
/// canonical graded-lexicographic order; zero coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(const RingPtr& ring, const Coeff& c);
  static Polynomial constant(const RingPtr& ring, long c);
  static Polynomial constant(const RingPtr& ring, const Rat& c);
  static Polynomial variable(const RingPtr& ring, std::size_t index);
  static Polynomial of_monomial(const RingPtr& ring, const Monomial& m,
                                const Coeff& c);

  const RingPtr& ring() const { return ring_; }
  const std::map<Monomial, Coeff>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  Coeff constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  long total_degree() const;
  /// Minimal total degree of a term; LONG_MAX for the zero polynomial.
  long order_at_origin() const;
  std::size_t num_terms() const { return terms_.size(); }

  /// True iff the polynomial is a nonzero constant multiple of one monomial.
  bool is_term() const { return terms_.size() == 1; }
  /// True iff some variable outside `allowed` occurs.
  bool uses_variable_outside(const std::vector<bool>& allowed) const;
  bool uses_variable(std::size_t index) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scaled(const Coeff& c) const;
  Polynomial pow(unsigned long e) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Divided-power derivative D_{x^alpha}: the coefficient of x^alpha in the
  /// Taylor expansion shift, computed via binomial coefficients on exponents
  /// so it stays meaningful over F_p.
  Polynomial derivative(const Monomial& alpha) const;
  Polynomial derivative(std::size_t var) const;

  /// Homogeneous part of the given total degree.
  Polynomial homogeneous_part(long degree) const;
  /// Linear part as a coefficient row indexed by variable.
  std::vector<Coeff> linear_part() const;

  /// Drops every term that uses one of the given variables (restriction to
  /// their zero locus).
  Polynomial restrict_zero(const std::vector<std::size_t>& vars) const;

  /// Substitutes images[i] for variable i; images live in `target` (which
  /// may be the same ring). Truncates at total degree `trunc` when >= 0,
  /// and reports whether truncation dropped anything via `dropped`.
  Polynomial substituted(const RingPtr& target,
                         const std::vector<Polynomial>& images,
                         long trunc = -1, bool* dropped = nullptr) const;

  /// Shift of coordinates x_i := x_i + point_i (exact).
  Polynomial translated(const std::vector<Coeff>& point) const;

  Coeff evaluate(const std::vector<Coeff>& point) const;

  /// Truncation to total degree <= n; sets *dropped if terms were lost.
  Polynomial truncated(long n, bool* dropped = nullptr) const;

  /// Divides by the coefficient of the smallest term so the generator list
  /// presentations are canonical.
  Polynomial monic() const;

  /// Componentwise gcd of all term monomials (the monomial content).
  Monomial monomial_content() const;

  /// Exact polynomial quotient by d, or nullopt when *this is not a multiple.
  std::optional<Polynomial> try_divide(const Polynomial& d) const;

  /// Transplants the terms into a ring with the same variable count (used
  /// for renaming variables in place).
  Polynomial renamed(const RingPtr& target) const;

  /// Maps terms through a variable-index permutation into `target`:
  /// new_exponent[perm[i]] = old_exponent[i].
  Polynomial permuted(const RingPtr& target,
                      const std::vector<std::size_t>& perm) const;

  /// Canonical text form: explicit `*` and `^`, terms in graded-lex order.
  std::string to_string() const;

  void add_term(const Monomial& m, const Coeff& c);

 private:
  RingPtr ring_;
  std::map<Monomial, Coeff> terms_;

  void check_same_ring(const Polynomial& o) const;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace cobord
