#include "doctest.h"
#include "floatauth/process.hpp"
#include "floatauth/syntax.hpp"

using namespace floatauth;

namespace {
Name n(const char* s) { return Name{s}; }
NameSet names(std::initializer_list<const char*> xs) {
  NameSet out;
  for (auto x : xs) out.insert(Name{x});
  return out;
}
}  // namespace

TEST_CASE("free names") {
  CHECK(free_names(auth(n("a"), nil())) == names({"a"}));
  CHECK(free_names(nil()).empty());
  CHECK(free_names(res(n("b"), Symbol{"r"}, std::nullopt, out(n("a"), n("b"), nil()))) == names({"a"}));
  CHECK(free_names(deleg_in(n("a"), n("b"), nil())) == names({"a", "b"}));
  CHECK(free_names(in(n("a"), n("x"), out(n("x"), n("y"), nil()))) == names({"a", "y"}));
}

TEST_CASE("annotation names are free and outside the binder's scope") {
  Process p = parse_process("new a:#r {{a,c}(0)}. a!b.0");
  CHECK(free_names(p) == names({"a", "b", "c"}));
  Process q = substitute(p, n("d"), n("a"));
  CHECK(print(q) == "new a:#r {{c,d}(0)}. a!b.0");
}

TEST_CASE("substitution") {
  CHECK(substitute(out(n("x"), n("c"), nil()), n("b"), n("x")) == out(n("b"), n("c"), nil()));

  Process p = res(n("b"), Symbol{"r"}, std::nullopt, out(n("x"), n("b"), nil()));
  Process q = substitute(p, n("b"), n("x"));
  const Res* r = q.as<Res>();
  REQUIRE(r);
  CHECK(r->binder != n("b"));
  CHECK(r->binder == n("b1"));
  CHECK(r->body == out(n("b"), r->binder, nil()));

  Process lic = auth(n("license"), nil());
  CHECK(substitute(lic, n("a"), n("x")).same_node(lic));
}

TEST_CASE("substitution stops at a binder for the placeholder") {
  Process p = parse_process("x!c.0 | a?x.x!c.0");
  CHECK(print(substitute(p, n("b"), n("x"))) == "b!c.0 | a?x.x!c.0");
}

TEST_CASE("fresh names use the smallest free suffix over the whole process") {
  Process p = parse_process("new b. (x!b.b1!c.0)");
  Process q = substitute(p, n("b"), n("x"));
  CHECK(print(q) == "new b2. b!b2.b1!c.0");
}

TEST_CASE("symbols") {
  CHECK(symbols(res(n("a"), Symbol{"r"}, std::nullopt, nil())) == SymbolSet{Symbol{"r"}});
  CHECK(symbols(res(n("a"), Nu{}, std::nullopt, nil())).empty());
  CHECK(symbols(nil()).empty());
}

TEST_CASE("well-formedness") {
  Process dup = par(res(n("a"), Symbol{"r"}, std::nullopt, nil()), res(n("b"), Symbol{"r"}, std::nullopt, nil()));
  auto w = well_formed(dup);
  CHECK_FALSE(w.ok());
  CHECK(w.violation == WellFormedness::Violation::DuplicateSymbol);

  Process rep_r = parse_process(
      "!license?x.new exam:#r {0}. ([x] x!exam.0 | [x] [exam] x?y.y!task.0)");
  auto w2 = well_formed(rep_r);
  CHECK(w2.violation == WellFormedness::Violation::SymbolUnderReplication);
  CHECK(w2.symbol == Symbol{"r"});

  Process rep_nu = parse_process(
      "!license?x.new exam:~ {0}. ([x] x!exam.0 | [x] [exam] x?y.y!task.0)");
  CHECK(well_formed(rep_nu).ok());
}

TEST_CASE("substitute is the identity without the placeholder") {
  Process p = parse_process("new c. [a] a!c.a?y.y!b.0");
  CHECK(substitute(p, n("z"), n("q")) == p);
  NameSet fn = free_names(substitute(p, n("z"), n("b")));
  CHECK(fn == names({"a", "z"}));
}

TEST_CASE("multiset laws") {
  NameMultiset a{n("a"), n("a"), n("b")};
  NameMultiset b{n("a"), n("c")};
  CHECK((a + b).count(n("a")) == 3);
  CHECK(a.join(b).count(n("a")) == 2);
  CHECK(a.join(b).count(n("c")) == 1);
  CHECK(b.without_one(n("z")) == b);
  CHECK(b.without_one(n("c")) == NameMultiset{n("a")});
  CHECK(NameMultiset{n("a")}.subset_of(a));
  CHECK_FALSE(b.subset_of(a));
  CHECK(to_string(a) == "{a:2,b:1}");
}
