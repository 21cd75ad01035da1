#include "floatauth/name.hpp"

#include <algorithm>
#include <sstream>

namespace floatauth {

bool is_identifier(const std::string& text) {
  if (text.empty() || text[0] < 'a' || text[0] > 'z') return false;
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

NameMultiset::NameMultiset(std::initializer_list<Name> names) {
  for (const auto& n : names) add(n);
}

NameMultiset NameMultiset::from_set(const NameSet& names) {
  NameMultiset m;
  for (const auto& n : names) m.add(n);
  return m;
}

std::size_t NameMultiset::count(const Name& n) const {
  auto it = counts_.find(n);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t NameMultiset::total() const {
  std::size_t t = 0;
  for (const auto& [n, c] : counts_) t += c;
  return t;
}

NameSet NameMultiset::support() const {
  NameSet s;
  for (const auto& [n, c] : counts_) s.insert(n);
  return s;
}

void NameMultiset::add(const Name& n, std::size_t times) {
  if (times == 0) return;
  counts_[n] += times;
}

void NameMultiset::remove_one(const Name& n) {
  auto it = counts_.find(n);
  if (it == counts_.end()) return;
  if (--it->second == 0) counts_.erase(it);
}

NameMultiset NameMultiset::operator+(const NameMultiset& other) const {
  NameMultiset r = *this;
  for (const auto& [n, c] : other.counts_) r.add(n, c);
  return r;
}

NameMultiset NameMultiset::without_one(const Name& n) const {
  NameMultiset r = *this;
  r.remove_one(n);
  return r;
}

NameMultiset NameMultiset::join(const NameMultiset& other) const {
  NameMultiset r = *this;
  for (const auto& [n, c] : other.counts_) {
    auto& slot = r.counts_[n];
    slot = std::max(slot, c);
  }
  return r;
}

bool NameMultiset::subset_of(const NameMultiset& other) const {
  return std::all_of(counts_.begin(), counts_.end(),
                     [&](const auto& e) { return e.second <= other.count(e.first); });
}

std::ostream& operator<<(std::ostream& os, const NameMultiset& m) {
  os << '{';
  bool first = true;
  for (const auto& [n, c] : m.counts()) {
    if (!first) os << ',';
    first = false;
    os << n.text << ':' << c;
  }
  return os << '}';
}

std::string to_string(const NameMultiset& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

Name fresh_name(const Name& base, const NameSet& taken) {
  for (std::size_t k = 1;; ++k) {
    Name candidate{base.text + std::to_string(k)};
    if (!taken.count(candidate)) return candidate;
  }
}

}  // namespace floatauth
