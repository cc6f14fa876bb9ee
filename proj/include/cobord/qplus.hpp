#pragma once

#include <string>
#include <vector>

#include "cobord/rational.hpp"

#include "json.hpp"

namespace cobord {

/// Rational symbol a or a_+ with the total order a < a_+ < b for a < b.
/// The plus flag marks divisorial weights as infinitesimally heavier.
struct QPlus {
  Rat value;
  bool plus = false;

  QPlus() = default;
  QPlus(Rat v, bool p = false) : value(std::move(v)), plus(p) {}

  bool operator==(const QPlus& o) const {
    return value == o.value && plus == o.plus;
  }
  bool operator!=(const QPlus& o) const { return !(*this == o); }
  bool operator<(const QPlus& o) const {
    if (value != o.value) return value < o.value;
    return plus < o.plus;
  }
  bool operator<=(const QPlus& o) const { return *this < o || *this == o; }
  bool operator>(const QPlus& o) const { return o < *this; }
  bool operator>=(const QPlus& o) const { return o <= *this; }

  /// Scalar multiplication by a positive rational keeps the flag.
  QPlus scaled(const Rat& c) const { return QPlus(value * c, plus); }

  /// "7", "2+", "4/3+".
  std::string to_string() const { return value.to_string() + (plus ? "+" : ""); }
  static QPlus parse(const std::string& s);
};

/// Finite ascending tuple of QPlus symbols under lexicographic order;
/// shorter tuples compare as if padded with infinity at the end, so a tuple
/// is strictly larger than any proper extension of itself.
class InvTuple {
 public:
  InvTuple() = default;
  explicit InvTuple(std::vector<QPlus> entries);

  const std::vector<QPlus>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  void append_block(std::vector<QPlus> block);

  bool operator==(const InvTuple& o) const { return entries_ == o.entries_; }
  bool operator!=(const InvTuple& o) const { return entries_ != o.entries_; }
  bool operator<(const InvTuple& o) const;
  bool operator<=(const InvTuple& o) const { return *this < o || *this == o; }
  bool operator>(const InvTuple& o) const { return o < *this; }
  bool operator>=(const InvTuple& o) const { return o <= *this; }

  /// All entries exactly 1 (no plus): the smooth-SNC stopping shape.
  bool is_all_ones() const;

  std::string to_string() const;
  nlohmann::json to_json() const;
  static InvTuple from_json(const nlohmann::json& j);

 private:
  std::vector<QPlus> entries_;
};

}  // namespace cobord
