#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "floatauth/process.hpp"

namespace floatauth {

/// <a>^i a!b, or (nu b)<a>^i a!b when `bound`.
struct OutL {
  Name subject, object;
  int subj_flag = 0;
  bool bound = false;
  auto operator<=>(const OutL&) const = default;
};
/// <a>^i a?b
struct InL {
  Name subject, object;
  int subj_flag = 0;
  auto operator<=>(const InL&) const = default;
};
/// <a>^i <b>^j a<b>
struct DelegOutL {
  Name subject, object;
  int subj_flag = 0, obj_flag = 0;
  auto operator<=>(const DelegOutL&) const = default;
};
/// <a>^i a(b)
struct DelegInL {
  Name subject, object;
  int subj_flag = 0;
  auto operator<=>(const DelegInL&) const = default;
};
/// tau_w; plain tau has nothing lacking.
struct TauL {
  NameMultiset lacking;
  auto operator<=>(const TauL&) const = default;
};

using Label = std::variant<OutL, InL, DelegOutL, DelegInL, TauL>;

std::string to_string(const Label& l);
bool is_tau(const Label& l);  // tau with nothing lacking
/// Names occurring in the label, lacking authorizations included.
NameSet label_names(const Label& l);

struct Transition {
  Label label;
  Process target;
  /// Decorations of the restriction opened by a bound output.
  std::optional<Binding> extruded;
};

/// All transitions of p. Input objects range over `universe` plus one fresh
/// name; restrictions in static position are first renamed apart from both.
std::vector<Transition> transitions(const Process& p, const NameSet& universe);

/// The fresh input object used by transitions(p, universe).
Name designated_fresh(const Process& p, const NameSet& universe);

/// Targets of tau transitions with nothing lacking. Input objects are fixed by
/// the synchronizing output, so no universe is needed.
std::vector<Process> tau_successors(const Process& p);

}  // namespace floatauth
