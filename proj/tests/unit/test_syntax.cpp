#include "doctest.h"
#include "floatauth/syntax.hpp"

using namespace floatauth;

namespace {
Name n(const char* s) { return Name{s}; }
}

TEST_CASE("parse examples") {
  CHECK(parse_process("[a] a!b.0 | [a] a?x.0") ==
        par(auth(n("a"), out(n("a"), n("b"), nil())), auth(n("a"), in(n("a"), n("x"), nil()))));
  CHECK(parse_process("[license][auth] auth<license>.0 | [auth] auth(license).0") ==
        par(auth(n("license"), auth(n("auth"), deleg_out(n("auth"), n("license"), nil()))),
            auth(n("auth"), deleg_in(n("auth"), n("license"), nil()))));
  Process r = parse_process("new a:#r {{b}(0)}. 0");
  const Res* res = r.as<Res>();
  REQUIRE(res);
  CHECK(res->binder == n("a"));
  CHECK(std::get<Symbol>(*res->tag) == Symbol{"r"});
  CHECK(*res->annotation == AuthType::chan(OmegaSet::of_names({n("b")}), AuthType::ground()));
  CHECK(res->body == nil());
}

TEST_CASE("print examples") {
  CHECK(print(nil()) == "0");
  CHECK(print(auth(n("a"), auth(n("b"), nil()))) == "[a] [b] 0");
  CHECK(print(out(n("a"), n("b"), in(n("a"), n("x"), nil()))) == "a!b.a?x.0");
  CHECK(print(parse_process("new a:#r {{b}(0)}. 0")) == "new a:#r {{b}(0)}. 0");
}

TEST_CASE("parallel composition is left associative") {
  Process p = parse_process("a!b.0 | b!c.0 | c!d.0");
  CHECK(p.as<Par>()->left.is<Par>());
  Process q = par(out(n("a"), n("b"), nil()), par(out(n("b"), n("c"), nil()), nil()));
  CHECK(print(q) == "a!b.0 | (b!c.0 | 0)");
  CHECK(parse_process(print(q)) == q);
}

TEST_CASE("scopes and prefixes bind tighter than parallel") {
  Process p = parse_process("[a] a!b.0 | 0");
  CHECK(p.is<Par>());
  Process q = parse_process("[a] (a!b.0 | 0)");
  CHECK(q.is<Auth>());
  CHECK(print(q) == "[a] (a!b.0 | 0)");
}

TEST_CASE("types and assumptions") {
  SourceFile f = parse("assume a : {a}({b,#r}(~(0))); // comment\nassume b:~(0);\n a!b.0");
  REQUIRE(f.assumptions.size() == 2);
  CHECK(to_string(f.assumptions[0].type) == "{a}({#r,b}(~(0)))");
  CHECK(print(f) == "assume a : {a}({#r,b}(~(0)));\nassume b : ~(0);\na!b.0");
  CHECK(parse(print(f)).assumptions[0].type == f.assumptions[0].type);
  CHECK(to_string(parse_type("{}(0)")) == "{}(0)");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse("a!b");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 4);
  }
  try {
    parse("assume a : {a}(0);\nassume a : {a}(0);\n0");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("a!b.0 $"), ParseError);
  CHECK_THROWS_AS(parse("new new. 0"), ParseError);
  CHECK_THROWS_AS(parse("A!b.0"), ParseError);
}

TEST_CASE("print of parse is idempotent on text") {
  for (const char* src : {"[a] [b] a<b>.0 | [a] a(b).[b] b!c.0", "!l?x.[x] l<x>.0 | new f. [l] l!f.l(f).0",
                          "new a:~ {0}. new b:#s. (a!b.0 | b?x.x!x.0)"}) {
    std::string once = print(parse_process(src));
    CHECK(print(parse_process(once)) == once);
  }
}
