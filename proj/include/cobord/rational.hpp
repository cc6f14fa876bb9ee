#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace cobord {

/// Exact rational number, always in lowest terms with positive denominator.
/// Used for coefficients over Q, Rees grades, weights, and valuations.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit from integers is intended
  Rat(long n, long d);
  explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p", "-p" or "p/q".
  static Rat parse(const std::string& text);

  Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  bool operator<(const Rat& o) const { return v_ < o.v_; }
  bool operator<=(const Rat& o) const { return v_ <= o.v_; }
  bool operator>(const Rat& o) const { return v_ > o.v_; }
  bool operator>=(const Rat& o) const { return v_ >= o.v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_positive() const { return v_ > 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  /// Value as long; requires an integer that fits.
  long to_long() const;
  /// Smallest integer >= value.
  long ceil_long() const;
  /// Largest integer <= value.
  long floor_long() const;

  Rat inverse() const;
  Rat abs() const { return Rat(mpq_class(::abs(v_))); }

  /// Canonical "p/q" (or "p" when integral) form.
  std::string to_string() const;

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// lcm(p1/q1, p2/q2) = lcm(p1,p2)/gcd(q1,q2): the smallest positive rational
/// that is an integer multiple of both arguments.
Rat rat_lcm(const Rat& a, const Rat& b);

/// gcd(p1/q1, p2/q2) = gcd(p1,p2)/lcm(q1,q2): the largest positive rational
/// dividing both arguments integrally.
Rat rat_gcd(const Rat& a, const Rat& b);

/// Binomial coefficient C(n, k) as an exact integer.
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace cobord
