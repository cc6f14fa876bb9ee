#pragma once

#include <cstdint>
#include <string>

#include "cobord/rational.hpp"

namespace cobord {

/// Coefficient field: the rationals Q, or a prime field F_p.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(long p);

  /// Parses "Q" or "GF(p)" / "Fp".
  static Field parse(const std::string& spec);

  bool is_rationals() const { return p_ == 0; }
  bool is_prime_field() const { return p_ != 0; }
  long characteristic() const { return p_; }

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

  std::string to_string() const;

 private:
  explicit Field(long p) : p_(p) {}
  long p_;  // 0 = rationals
};

/// Element of a coefficient field: a rational in lowest terms, or a residue
/// in [0, p).
class Coeff {
 public:
  Coeff() : field_(Field::rationals()), r_(0) {}
  explicit Coeff(Field f) : field_(f), r_(0) {}
  Coeff(Field f, const Rat& value);
  Coeff(Field f, long value) : Coeff(f, Rat(value)) {}

  static Coeff zero(Field f) { return Coeff(f); }
  static Coeff one(Field f) { return Coeff(f, 1); }

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Coeff operator+(const Coeff& o) const;
  Coeff operator-(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator/(const Coeff& o) const;
  Coeff operator-() const;
  Coeff inverse() const;
  Coeff pow(unsigned long e) const;

  bool operator==(const Coeff& o) const;
  bool operator!=(const Coeff& o) const { return !(*this == o); }

  /// Rational value; only valid over Q.
  const Rat& rational() const;
  /// Residue in [0, p); only valid over a prime field.
  long residue() const;

  /// "a/b" over Q, the residue over F_p.
  std::string to_string() const;

 private:
  Field field_;
  Rat q_;   // used over Q
  long r_;  // used over F_p, in [0, p)

  void check_same_field(const Coeff& o) const;
};

}  // namespace cobord
