#pragma once

#include <optional>
#include <vector>

#include "floatauth/congruence.hpp"
#include "floatauth/reduction.hpp"

namespace floatauth {

inline constexpr std::size_t kDefaultBudget = 10000;

/// FLOATAUTH_BUDGET when set to a positive integer, kDefaultBudget otherwise.
std::size_t default_budget();

struct ExploreOptions {
  std::size_t budget = kDefaultBudget;       // distinct states, up to congruence
  std::optional<std::size_t> max_depth;      // reduction steps from the initial state
  CongruenceMode mode = CongruenceMode::Untyped;
};

struct StateGraph {
  struct State {
    Process process;  // first reduct found for this class
    std::size_t depth = 0;
    std::vector<std::size_t> successors;
    std::vector<ErrorWitness> errors;
    bool expanded = false;
  };
  std::vector<State> states;  // states[0] is the initial process
  bool budget_exhausted = false;

  std::size_t error_count() const;
  std::size_t edge_count() const;
};

StateGraph explore(const Process& p, const ExploreOptions& opts = {});

}  // namespace floatauth
