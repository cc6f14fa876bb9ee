#include "cobord/qplus.hpp"

#include <algorithm>
#include <sstream>

#include "cobord/errors.hpp"

namespace cobord {

QPlus QPlus::parse(const std::string& s) {
  if (s.empty()) throw Error("empty QPlus literal");
  if (s.back() == '+') return QPlus(Rat::parse(s.substr(0, s.size() - 1)), true);
  return QPlus(Rat::parse(s), false);
}

InvTuple::InvTuple(std::vector<QPlus> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i] < entries_[i - 1])
      throw InternalError("invariant tuple entries must ascend");
}

void InvTuple::append_block(std::vector<QPlus> block) {
  std::sort(block.begin(), block.end());
  for (const auto& q : block) {
    if (!entries_.empty() && q < entries_.back())
      throw InternalError("invariant block breaks ascending order");
    entries_.push_back(q);
  }
}

bool InvTuple::operator<(const InvTuple& o) const {
  std::size_t n = std::min(entries_.size(), o.entries_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i] < o.entries_[i]) return true;
    if (o.entries_[i] < entries_[i]) return false;
  }
  // Equal prefix: missing entries read as infinity, so the longer tuple is
  // the smaller one.
  return entries_.size() > o.entries_.size();
}

bool InvTuple::is_all_ones() const {
  if (entries_.empty()) return false;
  for (const auto& q : entries_)
    if (q != QPlus(Rat(1), false)) return false;
  return true;
}

std::string InvTuple::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ",";
    os << entries_[i].to_string();
  }
  os << ")";
  return os.str();
}

nlohmann::json InvTuple::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& q : entries_) a.push_back(q.to_string());
  return a;
}

InvTuple InvTuple::from_json(const nlohmann::json& j) {
  std::vector<QPlus> es;
  for (const auto& s : j) es.push_back(QPlus::parse(s.get<std::string>()));
  return InvTuple(std::move(es));
}

}  // namespace cobord
