// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "criteria.hpp"

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<criteria::Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  // acceptance [corpus-dir] [criterion...]
  std::string dir = argc > 1 ? argv[1] : FLOATAUTH_CORPUS_DIR;
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const std::uint64_t seed = 20240611;
  std::vector<corpus::Entry> entries;
  try {
    entries = corpus::load(dir);
  } catch (const std::exception& e) {
    std::printf("cannot load corpus %s: %s\n", dir.c_str(), e.what());
    return 2;
  }

  const std::vector<Criterion> all{
      {1, "drift examples", 1, [] { return criteria::drift_goldens(); }},
      {2, "reduction examples", 1, [] { return criteria::reduction_goldens(); }},
      {3, "labelled transition example", 1, [] { return criteria::lts_golden(); }},
      {4, "harmony of reduction and tau-steps", 60, [&] { return criteria::harmony(entries, 3000, seed); }},
      {5, "typing verdicts", 1, [&] { return criteria::typing_verdicts(entries); }},
      {6, "demand antichain vs derivation search", 120, [&] { return criteria::oracle_equivalence(600, seed); }},
      {7, "subject reduction and safety", 120,
       [&] { return criteria::subject_reduction_and_safety(entries, 1000, seed); }},
      {8, "drift determinism", 30, [&] { return criteria::drift_determinism(1000, seed); }},
      {9, "congruence decision vs rewriting", 60, [&] { return criteria::congruence_agreement(500, seed); }},
  };

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    criteria::Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.limit_seconds) {
      o.pass = false;
      o.detail = "took " + std::to_string(secs) + "s, limit " + std::to_string(c.limit_seconds) + "s";
    }
    failed += !o.pass;
    std::printf("%s criterion %d: %s (%zu cases, %.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.cases, secs, o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
