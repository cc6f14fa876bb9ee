#include "cobord/rational.hpp"

#include <ostream>

#include "cobord/errors.hpp"

namespace cobord {

Rat::Rat(long n, long d) {
  if (d == 0) throw Error("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(mpq_class(mpz_class(text)));
    }
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    if (den == 0) throw Error("rational with zero denominator: " + text);
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(q);
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational literal: '" + text + "'");
  }
}

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) throw Error("division by zero rational");
  return Rat(mpq_class(v_ / o.v_));
}

long Rat::to_long() const {
  if (!is_integer()) throw Error("rational " + to_string() + " is not an integer");
  if (!v_.get_num().fits_slong_p()) throw Error("rational exceeds long range");
  return v_.get_num().get_si();
}

long Rat::ceil_long() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error("ceil exceeds long range");
  return q.get_si();
}

long Rat::floor_long() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw Error("floor exceeds long range");
  return q.get_si();
}

Rat Rat::inverse() const {
  if (is_zero()) throw Error("inverse of zero rational");
  return Rat(mpq_class(1 / v_));
}

std::string Rat::to_string() const {
  return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
  return os << r.to_string();
}

Rat rat_lcm(const Rat& a, const Rat& b) {
  if (a.is_zero() || b.is_zero()) throw Error("lcm of zero rational");
  mpz_class num, den;
  mpz_lcm(num.get_mpz_t(), mpz_class(abs(a.numerator())).get_mpz_t(),
          mpz_class(abs(b.numerator())).get_mpz_t());
  mpz_gcd(den.get_mpz_t(), a.denominator().get_mpz_t(),
          b.denominator().get_mpz_t());
  mpq_class q(num, den);
  q.canonicalize();
  return Rat(q);
}

Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  mpz_class num, den;
  mpz_gcd(num.get_mpz_t(), mpz_class(abs(a.numerator())).get_mpz_t(),
          mpz_class(abs(b.numerator())).get_mpz_t());
  mpz_lcm(den.get_mpz_t(), a.denominator().get_mpz_t(),
          b.denominator().get_mpz_t());
  mpq_class q(num, den);
  q.canonicalize();
  return Rat(q);
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace cobord
