#include "cobord/field.hpp"

#include "cobord/errors.hpp"

namespace cobord {
namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long mod_reduce(const mpz_class& n, long p) {
  mpz_class r = n % p;
  if (r < 0) r += p;
  return r.get_si();
}

long mul_mod(long a, long b, long p) {
  return static_cast<long>((__int128)a * b % p);
}

long pow_mod(long a, unsigned long e, long p) {
  long r = 1 % p;
  long base = a % p;
  while (e) {
    if (e & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return r;
}

long inv_mod(long a, long p) {
  if (a % p == 0) throw Error("inverse of zero in prime field");
  return pow_mod(a, static_cast<unsigned long>(p - 2), p);  // Fermat
}

}  // namespace

Field Field::prime(long p) {
  if (!is_prime(p)) throw Error("field characteristic must be prime, got " + std::to_string(p));
  return Field(p);
}

Field Field::parse(const std::string& spec) {
  if (spec == "Q" || spec == "QQ" || spec == "rationals") return rationals();
  if (spec.rfind("GF(", 0) == 0 && spec.back() == ')')
    return prime(std::stol(spec.substr(3, spec.size() - 4)));
  if (spec.rfind("F", 0) == 0 && spec.size() > 1)
    return prime(std::stol(spec.substr(1)));
  throw Error("unrecognized field spec '" + spec + "' (expected \"Q\" or \"GF(p)\")");
}

std::string Field::to_string() const {
  return is_rationals() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

Coeff::Coeff(Field f, const Rat& value) : field_(f), r_(0) {
  if (f.is_rationals()) {
    q_ = value;
  } else {
    long p = f.characteristic();
    if (mpz_class(value.denominator() % p) == 0)
      throw BadCharacteristic("denominator of " + value.to_string() +
                              " vanishes in " + f.to_string());
    long num = mod_reduce(value.numerator(), p);
    long den = mod_reduce(value.denominator(), p);
    r_ = mul_mod(num, inv_mod(den, p), p);
  }
}

bool Coeff::is_zero() const {
  return field_.is_rationals() ? q_.is_zero() : r_ == 0;
}

bool Coeff::is_one() const {
  return field_.is_rationals() ? q_ == Rat(1) : r_ == 1 % field_.characteristic();
}

void Coeff::check_same_field(const Coeff& o) const {
  if (field_ != o.field_)
    throw InternalError("mixed coefficient fields " + field_.to_string() +
                        " and " + o.field_.to_string());
}

Coeff Coeff::operator+(const Coeff& o) const {
  check_same_field(o);
  Coeff r(field_);
  if (field_.is_rationals())
    r.q_ = q_ + o.q_;
  else
    r.r_ = (r_ + o.r_) % field_.characteristic();
  return r;
}

Coeff Coeff::operator-(const Coeff& o) const {
  check_same_field(o);
  Coeff r(field_);
  if (field_.is_rationals())
    r.q_ = q_ - o.q_;
  else
    r.r_ = (r_ - o.r_ + field_.characteristic()) % field_.characteristic();
  return r;
}

Coeff Coeff::operator*(const Coeff& o) const {
  check_same_field(o);
  Coeff r(field_);
  if (field_.is_rationals())
    r.q_ = q_ * o.q_;
  else
    r.r_ = mul_mod(r_, o.r_, field_.characteristic());
  return r;
}

Coeff Coeff::operator/(const Coeff& o) const { return *this * o.inverse(); }

Coeff Coeff::operator-() const {
  Coeff r(field_);
  if (field_.is_rationals())
    r.q_ = -q_;
  else
    r.r_ = (field_.characteristic() - r_) % field_.characteristic();
  return r;
}

Coeff Coeff::inverse() const {
  Coeff r(field_);
  if (field_.is_rationals())
    r.q_ = q_.inverse();
  else
    r.r_ = inv_mod(r_, field_.characteristic());
  return r;
}

Coeff Coeff::pow(unsigned long e) const {
  Coeff r(field_);
  if (field_.is_rationals()) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q_.numerator().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q_.denominator().get_mpz_t(), e);
    if (den == 0) throw Error("pow of zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    r.q_ = Rat(q);
  } else {
    r.r_ = pow_mod(r_, e, field_.characteristic());
  }
  return r;
}

bool Coeff::operator==(const Coeff& o) const {
  if (field_ != o.field_) return false;
  return field_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
}

const Rat& Coeff::rational() const {
  if (!field_.is_rationals()) throw InternalError("rational() on prime-field element");
  return q_;
}

long Coeff::residue() const {
  if (!field_.is_prime_field()) throw InternalError("residue() on rational element");
  return r_;
}

std::string Coeff::to_string() const {
  return field_.is_rationals() ? q_.to_string() : std::to_string(r_);
}

}  // namespace cobord
