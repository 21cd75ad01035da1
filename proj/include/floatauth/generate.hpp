#pragma once

#include <cstdint>
#include <random>

#include "floatauth/process.hpp"
#include "floatauth/typecheck.hpp"

namespace floatauth {

struct GenOptions {
  std::size_t min_size = 1;
  std::size_t max_size = 12;   // AST nodes
  double auth_density = 0.3;   // weight of authorization scopes among node kinds
  double type_bias = 0.85;     // chance an object is picked to fit the channel type
  bool replication = true;     // at most one level of replicated input
  bool restriction = true;
  bool delegation = true;
  std::size_t free_names = 4;  // pool a, b, c, d truncated to this many
};

struct Sample {
  TypeEnv env;
  Process process;
};

/// Deterministic in (seed, options). Free names are drawn from a, b, c, d and
/// get assumptions of shape {a}(T) or ~(T). Restrictions carry tags and annotations.
class Generator {
 public:
  explicit Generator(std::uint64_t seed, GenOptions opts = {});

  Sample next();
  /// Wraps the process in authorizations for one minimal demand when it is
  /// typable but not closed. Untypable samples are returned unchanged.
  static Sample close(Sample s);

  std::uint64_t uniform(std::uint64_t n);  // in [0, n)
  bool chance(double p);

 private:
  std::mt19937_64 rng_;
  GenOptions opts_;
};

}  // namespace floatauth
