#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace cobord {

/// Exponent vector of a monomial; its length equals the ambient variable
/// count of the ring it lives in.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<uint32_t> exps) : e_(std::move(exps)) {}

  std::size_t nvars() const { return e_.size(); }
  uint32_t operator[](std::size_t i) const { return e_[i]; }
  uint32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<uint32_t>& exponents() const { return e_; }

  long total_degree() const {
    return std::accumulate(e_.begin(), e_.end(), 0L);
  }

  bool is_one() const {
    for (auto x : e_)
      if (x) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  /// Componentwise quotient; requires divides(o) in the caller.
  Monomial quotient_of(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.e_.size(); ++i)
      if (b.e_[i] < r.e_[i]) r.e_[i] = b.e_[i];
    return r;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  // Graded-lexicographic term order: lower total degree first; within a
  // degree the lexicographically larger exponent vector (earlier variables
  // weigh more) comes first, so x1^2 < x1*x2 < x2^2.
  bool operator<(const Monomial& o) const {
    long da = total_degree(), db = o.total_degree();
    if (da != db) return da < db;
    return e_ > o.e_;
  }

 private:
  std::vector<uint32_t> e_;
};

}  // namespace cobord
