#include "doctest.h"

#include <fstream>
#include <sstream>

#include "catwb/cli/commands.hpp"
#include "catwb/fincat/examples.hpp"

using namespace catwb;
using namespace catwb::cli;

namespace {

std::string corpus(const std::string &name) {
  std::ifstream in(std::string(CATWB_CORPUS_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const char *kCorpus[] = {"delta.cat", "product.cat", "equalizer.cat"};

std::vector<Diagnostic> diagnosticsOf(const std::string &src) {
  try {
    analyze(parseDocument(src));
  } catch (const DslError &e) {
    return e.diagnostics();
  }
  return {};
}

Report runOn(const std::string &command, const std::string &file,
             const std::vector<std::string> &args = {}, Flags flags = {}) {
  return runSource(command, corpus(file), file, args, flags);
}

} // namespace

TEST_CASE("one object, one morphism") {
  auto ws = analyze(parseDocument("category one { objects: x }"));
  auto c = ws.category("one");
  REQUIRE(c);
  CHECK(c->objectCount() == 1);
  CHECK(c->morphismCount() == 1);
  CHECK(c->morphismName(c->identity(0)) == "id_x");
  CHECK(fincat::validateCategory(*c).empty());
}

TEST_CASE("missing composition entry is a positioned diagnostic") {
  std::string src = "category two {\n"
                    "  objects: a, b;\n"
                    "  morphisms: f : a -> b; g : b -> a;\n"
                    "  compose: f . g = id_b\n"
                    "}\n";
  auto ds = diagnosticsOf(src);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].message.find("non-total composition table") != std::string::npos);
  CHECK(ds[0].message.find("g . f") != std::string::npos);
  CHECK(ds[0].pos.line == 1);
  CHECK(ds[0].pos.column == 10);
  // the same source, the same diagnostics
  auto again = diagnosticsOf(src);
  REQUIRE(again.size() == 1);
  CHECK(again[0].str() == ds[0].str());
}

TEST_CASE("syntax and name errors") {
  try {
    parseDocument("category c { objects: a b }");
    FAIL("no error");
  } catch (const DslError &e) {
    CHECK(e.diagnostics()[0].str() == "1:25: unexpected token 'b', expected ';'");
  }
  auto ds = diagnosticsOf("category c { objects: a, a; morphisms: f : a -> z }\n"
                          "functor F : d { a -> { x } }\n");
  REQUIRE(ds.size() >= 3);
  CHECK(std::is_sorted(ds.begin(), ds.end(),
                       [](const Diagnostic &x, const Diagnostic &y) { return x.pos < y.pos; }));
  std::string all;
  for (const auto &d : ds)
    all += d.str() + "\n";
  CHECK(all.find("duplicate object a") != std::string::npos);
  CHECK(all.find("unknown object z") != std::string::npos);
  CHECK(all.find("unknown category d") != std::string::npos);
  CHECK(all.find("2:13") != std::string::npos);
}

TEST_CASE("print and parse round trip") {
  for (const char *name : kCorpus) {
    CAPTURE(name);
    auto doc = parseDocument(corpus(name));
    auto printed = print(doc);
    auto back = parseDocument(printed);
    CHECK(back == doc);
    CHECK(print(back) == printed);
  }
  auto doc = parseDocument("category c { objects: a }\n"
                           "terminal t { apex: a }\n"
                           "functor F : op(c) { a -> { x } }\n"
                           "query q { equal \"a.x\" \"a.x\"; normalize \"a.x\" }\n");
  CHECK(parseDocument(print(doc)) == doc);
}

TEST_CASE("delta.cat is delta") {
  auto ws = analyze(parseDocument(corpus("delta.cat")));
  auto shipped = ws.category("delta");
  auto ref = fincat::delta();
  REQUIRE(shipped);
  CHECK(fincat::validateCategory(*shipped).empty());
  REQUIRE(shipped->objectCount() == ref.objectCount());
  REQUIRE(shipped->morphismCount() == ref.morphismCount());
  for (fincat::ObjId a = 0; a < ref.objectCount(); ++a)
    CHECK(shipped->objectName(a) == ref.objectName(a));
  for (fincat::MorId m = 0; m < ref.morphismCount(); ++m) {
    auto s = shipped->findMorphism(ref.morphismName(m));
    REQUIRE(s);
    CHECK(shipped->objectName(shipped->dom(*s)) == ref.objectName(ref.dom(m)));
    CHECK(shipped->objectName(shipped->cod(*s)) == ref.objectName(ref.cod(m)));
    for (fincat::MorId g = 0; g < ref.morphismCount(); ++g) {
      if (ref.cod(m) != ref.dom(g))
        continue;
      auto sg = *shipped->findMorphism(ref.morphismName(g));
      CHECK(shipped->morphismName(shipped->compose(sg, *s)) ==
            ref.morphismName(ref.compose(g, m)));
    }
  }
  for (fincat::ObjId a = 0; a < ref.objectCount(); ++a)
    CHECK(shipped->morphismName(shipped->identity(a)) == ref.morphismName(ref.identity(a)));
}

TEST_CASE("commands on the corpus") {
  auto v = runOn("validate", "delta.cat");
  CHECK(v.exitCode() == 0);
  CHECK(v.find("category/delta"));
  CHECK(v.find("cone/sum"));
  CHECK(v.find("nat/gamma"));

  auto eq = runOn("equal", "product.cat", {"fst(pair(O1.a, O1.b))", "O1.a"});
  REQUIRE(eq.checks().size() == 1);
  CHECK(eq.checks()[0].verdict == Verdict::Pass);
  CHECK(eq.exitCode() == 0);

  auto ce = runOn("counterexample", "delta.cat");
  CHECK(ce.exitCode() == 0);
  CHECK(ce.find("counterexample/sum/candidate-0")->verdict == Verdict::Pass);
  CHECK(ce.find("counterexample/sum/candidate-1")->verdict == Verdict::Pass);
  CHECK(!ce.find("counterexample/sum/candidate-2"));

  auto lk = runOn("lambek-demo", "delta.cat");
  CHECK(lk.exitCode() == 0);
  CHECK(lk.find("lambek/sum/counts")->detail.find("n0: 1, n1: 2, n2: 4") != std::string::npos);

  auto ez = runOn("eqlz-demo", "equalizer.cat");
  CHECK(ez.exitCode() == 0);
  CHECK(ez.find("eqlz/M/beta-eta")->detail.find("e3b") != std::string::npos);
}

TEST_CASE("exit codes follow the verdicts") {
  // a separated pair fails with a witness
  auto d = runOn("equal", "delta.cat", {"n1.l_id1", "n1.r_id1"});
  CHECK(d.exitCode() == 1);
  CHECK(!d.checks()[0].witness.empty());
  // an unguarded eql term is unknown, not false
  auto u = runOn("normalize", "equalizer.cat", {"eql(A.a2)"});
  CHECK(u.checks()[0].verdict == Verdict::Unknown);
  CHECK(u.exitCode() == 2);
  // a bad document is a failing parse check
  auto p = runSource("validate", "category c { objects: a", "bad.cat", {}, {});
  REQUIRE(p.checks().size() == 1);
  CHECK(p.checks()[0].id == "parse");
  CHECK(p.exitCode() == 1);
  // usage errors
  CHECK_THROWS_AS(runOn("equal", "delta.cat", {"n1.l_id1"}), UsageError);
  CHECK_THROWS_AS(runOn("equal", "delta.cat", {"n1.l_id1", "nope("}), UsageError);
  CHECK_THROWS_AS(runOn("eqlz-demo", "delta.cat"), UsageError);
  CHECK_THROWS_AS(runOn("validate", "delta.cat", {"x"}), UsageError);
  CHECK_THROWS_AS(runOn("frobnicate", "delta.cat"), UsageError);
  // every corpus file, every command: the exit code is the report's
  for (const char *name : kCorpus)
    for (const auto &cmd : commandNames()) {
      try {
        auto r = runOn(cmd, name);
        Verdict v = r.verdict();
        CHECK(r.exitCode() == (v == Verdict::Pass ? 0 : v == Verdict::Fail ? 1 : 2));
        for (const auto &c : r.checks())
          if (c.verdict == Verdict::Fail)
            CHECK(!c.witness.empty());
      } catch (const UsageError &) {
      }
    }
}

TEST_CASE("structured reports are deterministic") {
  Flags f;
  f.format = Flags::Format::Structured;
  for (const char *name : kCorpus)
    for (const auto &cmd : commandNames()) {
      CAPTURE(name);
      CAPTURE(cmd);
      try {
        auto a = runOn(cmd, name, {}, f).render();
        auto b = runOn(cmd, name, {}, f).render();
        CHECK(a == b);
        CHECK(a.rfind("{\n  \"schema\": \"catwb-report/1\"", 0) == 0);
      } catch (const UsageError &) {
      }
    }
}

TEST_CASE("a failing record needs a witness") {
  Report r("validate", "x", {});
  CHECK_THROWS_AS(r.add({"a", Verdict::Fail, "", ""}), std::logic_error);
  r.add({"b", Verdict::Unknown, "", ""});
  r.add({"a", Verdict::Pass, "", ""});
  r.canonicalize();
  CHECK(r.checks()[0].id == "a");
  CHECK(r.exitCode() == 2);
}
