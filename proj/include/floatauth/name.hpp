#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <variant>

namespace floatauth {

/// A channel name. Names compare by their text.
struct Name {
  std::string text;

  auto operator<=>(const Name&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Name& n) { return os << n.text; }

/// A symbol from the countable symbol set, written `#r` in source text.
struct Symbol {
  std::string id;

  auto operator<=>(const Symbol&) const = default;
};

/// The distinguished symbol for names never subject to contextual authorizations.
struct Nu {
  auto operator<=>(const Nu&) const = default;
};

using SymbolTag = std::variant<Symbol, Nu>;

using NameSet = std::set<Name>;
using SymbolSet = std::set<Symbol>;

bool is_identifier(const std::string& text);

/// Multiset of names. Entries with zero multiplicity are never stored.
class NameMultiset {
 public:
  using Counts = std::map<Name, std::size_t>;

  NameMultiset() = default;
  NameMultiset(std::initializer_list<Name> names);
  static NameMultiset from_set(const NameSet& names);

  std::size_t count(const Name& n) const;
  bool contains(const Name& n) const { return count(n) > 0; }
  bool empty() const { return counts_.empty(); }
  std::size_t total() const;
  const Counts& counts() const { return counts_; }
  NameSet support() const;

  void add(const Name& n, std::size_t times = 1);
  /// Removes one occurrence; no effect when absent.
  void remove_one(const Name& n);

  NameMultiset operator+(const NameMultiset& other) const;  // sum
  NameMultiset without_one(const Name& n) const;
  NameMultiset join(const NameMultiset& other) const;       // pointwise max
  bool subset_of(const NameMultiset& other) const;          // pointwise <=

  auto operator<=>(const NameMultiset&) const = default;

 private:
  Counts counts_;
};

std::ostream& operator<<(std::ostream& os, const NameMultiset& m);
std::string to_string(const NameMultiset& m);

/// Smallest `base + k` (k = 1, 2, ...) not in `taken`.
Name fresh_name(const Name& base, const NameSet& taken);

}  // namespace floatauth
