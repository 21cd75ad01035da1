#pragma once

#include <string>

#include "floatauth/process.hpp"

namespace floatauth {

/// Typed mode omits (sc-res-inact): unused restrictions are kept.
enum class CongruenceMode { Untyped, Typed };

struct CanonicalForm {
  Process process;            // parseable representative, binders renamed v1, v2, ...
  std::string serialization;  // equal iff the forms are equal

  bool operator==(const CanonicalForm& o) const { return serialization == o.serialization; }
  bool operator<(const CanonicalForm& o) const { return serialization < o.serialization; }
};

CanonicalForm canonicalize(const Process& p, CongruenceMode mode = CongruenceMode::Untyped);
bool congruent(const Process& p, const Process& q, CongruenceMode mode = CongruenceMode::Untyped);

/// Above this many restrictions in one static region the binder order is
/// picked by a signature heuristic instead of trying every permutation.
inline constexpr std::size_t kExactBinderOrderLimit = 6;

}  // namespace floatauth
