#include "floatauth/explore.hpp"

#include <cstdlib>
#include <deque>
#include <string>
#include <unordered_map>

namespace floatauth {

std::size_t default_budget() {
  if (const char* env = std::getenv("FLOATAUTH_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultBudget;
}

std::size_t StateGraph::error_count() const {
  std::size_t n = 0;
  for (const auto& s : states) n += !s.errors.empty();
  return n;
}

std::size_t StateGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : states) n += s.successors.size();
  return n;
}

StateGraph explore(const Process& p, const ExploreOptions& opts) {
  StateGraph g;
  std::unordered_map<std::string, std::size_t> index;
  std::deque<std::size_t> queue;

  auto admit = [&](const Process& q, std::size_t depth) -> std::optional<std::size_t> {
    std::string key = canonicalize(q, opts.mode).serialization;
    if (auto it = index.find(key); it != index.end()) return it->second;
    if (g.states.size() >= opts.budget) {
      g.budget_exhausted = true;
      return std::nullopt;
    }
    std::size_t id = g.states.size();
    index.emplace(std::move(key), id);
    g.states.push_back({q, depth, {}, error_witnesses(q), false});
    queue.push_back(id);
    return id;
  };

  admit(p, 0);
  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    std::size_t depth = g.states[id].depth;
    if (opts.max_depth && depth >= *opts.max_depth) continue;
    Process current = g.states[id].process;
    std::vector<std::size_t> succ;
    bool complete = true;
    for (const auto& q : reduce(current)) {
      auto s = admit(q, depth + 1);
      if (s) succ.push_back(*s);
      else complete = false;
    }
    g.states[id].successors = std::move(succ);
    g.states[id].expanded = complete;
  }
  return g;
}

}  // namespace floatauth
