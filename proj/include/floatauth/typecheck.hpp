#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>

#include "floatauth/process.hpp"
#include "floatauth/syntax.hpp"
#include "floatauth/types.hpp"

namespace floatauth {

using TypeEnv = std::map<Name, AuthType>;

TypeEnv env_of(const SourceFile& file);
/// Every name occurring in the environment, entry names included.
NameSet env_names(const TypeEnv& env);

/// Upward-closed set of multisets, represented by its minimal elements.
class DemandAntichain {
 public:
  DemandAntichain() = default;
  explicit DemandAntichain(std::set<NameMultiset> elems);
  static DemandAntichain unit() { return DemandAntichain({NameMultiset{}}); }

  const std::set<NameMultiset>& minimal() const { return minimal_; }
  bool empty() const { return minimal_.empty(); }
  bool accepts(const NameMultiset& rho) const;

  bool operator==(const DemandAntichain& o) const { return minimal_ == o.minimal_; }

 private:
  std::set<NameMultiset> minimal_;
};

std::string to_string(const DemandAntichain& a);

struct Untypable {
  enum class Kind {
    MissingAssumption,
    NotAChannel,
    CarriedTypeMismatch,
    NotSafeToSend,
    DuplicateSymbol,
    SymbolUnderReplication,
    SymbolReused,
    UntaggedRestriction,
    RestrictedNameInType,
    ReplicatedBodyDemand,
    NoAcceptableDemand,
    BadAssumption,
  };
  Kind kind;
  std::string reason;
};

using DemandResult = std::variant<DemandAntichain, Untypable>;

/// Minimal demands rho with env |-rho p.
DemandResult demands(const TypeEnv& env, const Process& p);

struct WellTyped {};
struct NotClosed {
  DemandAntichain antichain;
};
using Verdict = std::variant<WellTyped, Untypable, NotClosed>;

/// Checks assumption shapes, then decides env |-{} p.
Verdict check(const SourceFile& file);
Verdict check(const TypeEnv& env, const Process& p);
std::string to_string(const Verdict& v);

/// Top-down derivation search for env |-rho p, independent of demands().
/// Every multiplicity of rho must be at most `bound` (std::invalid_argument otherwise).
bool oracle_typable(const TypeEnv& env, const Process& p, const NameMultiset& rho, std::size_t bound);

}  // namespace floatauth
