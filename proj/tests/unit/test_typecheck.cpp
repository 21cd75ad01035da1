#include "doctest.h"
#include "floatauth/syntax.hpp"
#include "floatauth/typecheck.hpp"

using namespace floatauth;

namespace {

std::string verdict(const char* src) { return to_string(check(parse(src))); }

bool untypable(const char* src) { return std::holds_alternative<Untypable>(check(parse(src))); }

}  // namespace

TEST_CASE("demands of the three-sender example") {
  SourceFile f = parse(
      "assume a : {a}({b,c}({d}(0))); assume b : {b}({d}(0)); assume c : {c}({d}(0));"
      "assume d : {d}(0);"
      "[a] a!b.0 | [a] a!c.0 | [a] [b] [c] a?x.x!d.0");
  CHECK(to_string(check(f)) == "welltyped");
  auto d = demands(env_of(f), f.process);
  REQUIRE(std::holds_alternative<DemandAntichain>(d));
  CHECK(std::get<DemandAntichain>(d) == DemandAntichain::unit());
}

TEST_CASE("contextual authorizations for received names") {
  CHECK(verdict("assume alice : {alice}({exam,minitest}(0)); assume exam : {exam}(0);"
                "assume minitest : {minitest}(0);"
                "[exam] [minitest] [alice] alice?x.x?t.0") == "welltyped");
  CHECK(verdict("assume alice : {alice}({exam,minitest}(0)); assume exam : {exam}(0);"
                "assume minitest : {minitest}(0);"
                "[alice] alice?x.x?t.0") == "notclosed {{exam:1,minitest:1}}");
}

TEST_CASE("nil is typable under any demand") {
  CHECK(std::get<DemandAntichain>(demands({}, nil())) == DemandAntichain::unit());
  CHECK(verdict("0") == "welltyped");
}

TEST_CASE("nu-typed names cannot be contextually authorized") {
  CHECK(untypable("assume a : {a}(~({c}(0))); assume b : ~({c}(0)); assume c : {c}(0);"
                  "[a] a!b.0 | [a] [b] a?x.x!c.0"));
  CHECK(verdict("assume a : {a}({b}({c}(0))); assume b : {b}({c}(0)); assume c : {c}(0);"
                "[a] a!b.0 | [a] [b] a?x.x!c.0") == "welltyped");
}

TEST_CASE("a!b.0 | a?x.0 needs two authorizations on a") {
  CHECK(verdict("assume a : {a}({b}(0)); assume b : {b}(0); a!b.0 | a?x.0") == "notclosed {{a:2}}");
}

TEST_CASE("typing failures") {
  CHECK(untypable("a!b.0"));
  CHECK(untypable("assume a : {a}({c}(0)); assume b : {b}(0); assume c : {c}(0); [a] a!b.0"));
  CHECK(untypable("assume a : {a}({b}(0)); assume b : {b}(~(0)); [a] a!b.0"));
  CHECK(untypable("assume a : {b}(0); 0"));
  CHECK(untypable("assume a : {a}({a}(0)); new b. [a] a!b.0"));
  CHECK(untypable("assume a : {a}({a}(0)); new b:#r {0}. new c:#r {0}. 0"));
}

TEST_CASE("oracle agrees on small examples") {
  SourceFile f = parse("assume a : {a}({b}(0)); assume b : {b}(0); a!b.0 | a?x.0");
  TypeEnv env = env_of(f);
  NameMultiset aa;
  aa.add(Name{"a"}, 2);
  CHECK(oracle_typable(env, f.process, aa, 2));
  CHECK_FALSE(oracle_typable(env, f.process, NameMultiset{Name{"a"}}, 2));
  CHECK(oracle_typable(env, nil(), {}, 1));
  CHECK_THROWS_AS(oracle_typable(env, f.process, aa, 1), std::invalid_argument);
}
