#pragma once

// Random restriction-free contexts over the names a and b, holes marked as in fixtures.hpp.

#include "fixtures.hpp"
#include "floatauth/generate.hpp"

namespace fixtures {

struct ContextGen {
  floatauth::Generator& g;
  bool swap_markers = false;  // second marker reached first
  int next_marker = 0;

  floatauth::Process marker() {
    bool first = (next_marker++ == 0) != swap_markers;
    return first ? hole1() : hole2();
  }

  floatauth::Name name() { return g.chance(0.6) ? floatauth::Name{"a"} : floatauth::Name{"b"}; }

  // `holes` markers somewhere below; `budget` bounds the remaining work.
  floatauth::Process tree(int holes, int budget) {
    using namespace floatauth;
    if (budget <= 1 || (holes <= 1 && g.chance(0.25))) {
      if (holes == 2) return par(marker(), marker());
      if (holes == 1) return marker();
      return g.chance(0.5) ? nil() : out(Name{"r"}, Name{"r"}, nil());
    }
    if (g.chance(0.5)) return auth(name(), tree(holes, budget - 1));
    int left = holes == 2 ? static_cast<int>(g.uniform(3)) : holes == 1 ? static_cast<int>(g.uniform(2)) : 0;
    Process l = tree(left, budget / 2);
    return par(l, tree(holes - left, budget - budget / 2));
  }
};

}  // namespace fixtures
