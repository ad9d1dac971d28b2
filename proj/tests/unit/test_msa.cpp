#include <functional>
#include <map>
#include <unordered_set>

#include "doctest.h"

#include "catwb/msa/algebra.hpp"
#include "catwb/msa/derivation.hpp"
#include "catwb/msa/enumerate.hpp"

using namespace catwb::msa;

namespace {

// Two objects A, B; morphisms idA, idB, g : A -> B, plus a constant c : A.
struct Arrow {
  std::shared_ptr<Signature> sig = std::make_shared<Signature>();
  SortId A, B;
  SymbolId idA, idB, g, c;
  std::vector<Equation> E;

  Arrow() {
    A = sig->addSort("A");
    B = sig->addSort("B");
    idA = sig->addSymbol("idA", {A}, A);
    idB = sig->addSymbol("idB", {B}, B);
    g = sig->addSymbol("g", {A}, B);
    c = sig->addSymbol("c", {}, A);
    Term x = sig->variable("x", A), y = sig->variable("y", B);
    E.push_back(makeEquation(sig->apply(idA, {x}), x));
    E.push_back(makeEquation(sig->apply(idB, {y}), y));
    // comp equations for composable pairs with the identities
    E.push_back(makeEquation(sig->apply(g, {x}), sig->apply(g, {sig->apply(idA, {x})})));
    E.push_back(makeEquation(sig->apply(g, {x}), sig->apply(idB, {sig->apply(g, {x})})));
  }
  Term app(SymbolId f, Term t) const { return sig->apply(f, {t}); }
  Term cst() const { return sig->constant(c); }
};

// Independent count: terms of sort s with exactly n nodes.
std::size_t countExact(const Signature &sig, SortId s, std::size_t n, std::size_t vars,
                       std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> &memo) {
  auto key = std::make_pair(s.value, n);
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  std::size_t total = n == 1 ? vars : 0;
  for (std::uint32_t f = 0; f < sig.symbolCount(); ++f) {
    const auto &sym = sig.symbol(SymbolId{f});
    if (sym.result != s)
      continue;
    std::function<std::size_t(std::size_t, std::size_t)> ways = [&](std::size_t i,
                                                                   std::size_t left) {
      if (i == sym.args.size())
        return std::size_t(left == 0);
      std::size_t acc = 0;
      for (std::size_t k = 1; k <= left; ++k)
        acc += countExact(sig, sym.args[i], k, vars, memo) * ways(i + 1, left - k);
      return acc;
    };
    if (n >= 1)
      total += ways(0, n - 1);
  }
  memo[key] = total;
  return total;
}

} // namespace

TEST_CASE("sort_of follows the typing judgment") {
  Arrow a;
  CHECK(sortOf(PreTerm::var("x", a.A), *a.sig) == a.A);
  CHECK(sortOf(PreTerm::app(a.g, {PreTerm::app(a.c)}), *a.sig) == a.B);
  try {
    sortOf(PreTerm::app(a.idA, {PreTerm::app(a.g, {PreTerm::app(a.c)})}), *a.sig);
    FAIL("expected IllSorted");
  } catch (const IllSorted &e) {
    CHECK(e.path().empty());
  }
  try {
    sortOf(PreTerm::app(a.idB, {PreTerm::app(a.g, {PreTerm::app(a.idB, {PreTerm::app(a.c)})})}),
           *a.sig);
    FAIL("expected IllSorted");
  } catch (const IllSorted &e) {
    CHECK(e.path() == std::vector<std::size_t>{0, 0});
  }
}

TEST_CASE("substitution") {
  Arrow a;
  Term x = a.sig->variable("x", a.A), y = a.sig->variable("y", a.A);
  Term r = a.app(a.idA, a.cst());
  CHECK(substitute(*a.sig, x, x, r) == r);
  CHECK(substitute(*a.sig, y, x, r) == y);
  CHECK(substitute(*a.sig, a.app(a.g, x), x, r) == a.app(a.g, r));
  CHECK_THROWS_AS(substitute(*a.sig, x, x, a.app(a.g, a.cst())), SortMismatch);
  // Substitution lemma over enumerated open terms.
  for (Term s : enumerateTerms(*a.sig, a.B, 5, true))
    CHECK(substitute(*a.sig, s, a.sig->variable("x", a.A), r).sort() == s.sort());
}

TEST_CASE("interning gives identity on structural equality") {
  Arrow a;
  CHECK(a.app(a.g, a.cst()) == a.app(a.g, a.cst()));
  CHECK(a.sig->variable("x", a.A) != a.sig->variable("x", a.B));
}

TEST_CASE("enumerate_terms") {
  auto sig = std::make_shared<Signature>();
  SortId A = sig->addSort("A");
  SymbolId c = sig->addSymbol("c", {}, A);
  CHECK(enumerateTerms(*sig, A, 1, false) == std::vector<Term>{sig->constant(c)});
  SymbolId f = sig->addSymbol("f", {A}, A);
  Term tc = sig->constant(c);
  CHECK(enumerateTerms(*sig, A, 3, false) ==
        std::vector<Term>{tc, sig->apply(f, {tc}), sig->apply(f, {sig->apply(f, {tc})})});
  SortId Z = sig->addSort("Z");
  sig->addSymbol("z", {Z}, Z);
  CHECK(enumerateTerms(*sig, Z, 6, false).empty());
}

TEST_CASE("enumeration is exhaustive and duplicate-free") {
  Signature sig;
  SortId A = sig.addSort("A"), B = sig.addSort("B");
  sig.addSymbol("a", {}, A);
  sig.addSymbol("b", {}, B);
  sig.addSymbol("f", {A}, B);
  sig.addSymbol("p", {A, B}, A);
  sig.addSymbol("q", {B, B, A}, B);
  for (bool vars : {false, true}) {
    std::map<std::pair<std::uint32_t, std::size_t>, std::size_t> memo;
    for (SortId s : {A, B}) {
      auto terms = enumerateTerms(sig, s, 7, vars);
      std::size_t expected = 0;
      for (std::size_t n = 1; n <= 7; ++n)
        expected += countExact(sig, s, n, vars ? 1 : 0, memo);
      CHECK(terms.size() == expected);
      std::unordered_set<Term, TermHash> seen(terms.begin(), terms.end());
      CHECK(seen.size() == terms.size());
      for (std::size_t i = 1; i < terms.size(); ++i)
        CHECK(terms[i - 1].size() <= terms[i].size());
    }
  }
}

TEST_CASE("derives: axioms, reflexivity, composition") {
  Arrow a;
  Term c = a.cst();
  Budget b{5, 1000};

  Equation ax = a.E[0];
  auto d = derives(*a.sig, a.E, ax, b);
  REQUIRE(std::holds_alternative<Proved>(d));
  CHECK_FALSE(checkTrace(*a.sig, a.E, std::get<Proved>(d).trace, ax));

  Equation refl = makeEquation(c, c);
  d = derives(*a.sig, a.E, refl, b);
  REQUIRE(std::holds_alternative<Proved>(d));
  CHECK(std::get<Proved>(d).trace.steps.size() == 1);

  Equation goal = makeEquation(a.app(a.g, c), a.app(a.idB, a.app(a.g, a.app(a.idA, c))));
  d = derives(*a.sig, a.E, goal, b);
  REQUIRE(std::holds_alternative<Proved>(d));
  const Trace &t = std::get<Proved>(d).trace;
  CHECK_FALSE(checkTrace(*a.sig, a.E, t, goal));
  CHECK(t.serialize(*a.sig).find("⟹") != std::string::npos);

  // A corrupted trace is rejected.
  Trace bad = t;
  bad.steps.front().conclusion = makeEquation(c, a.app(a.idA, a.app(a.idA, c)));
  CHECK(checkTrace(*a.sig, a.E, bad, goal));
}

TEST_CASE("derives is honest about what it cannot prove") {
  Arrow a;
  auto sig = a.sig;
  SymbolId d = sig->addSymbol("d", {}, a.A);
  Equation goal = makeEquation(a.cst(), sig->constant(d));
  auto r = derives(*sig, a.E, goal, Budget{6, 1000});
  REQUIRE(std::holds_alternative<Unknown>(r));
  CHECK_FALSE(std::get<Unknown>(r).report.exhausted);

  auto tiny = derives(*sig, a.E, makeEquation(a.app(a.idA, a.app(a.idA, a.cst())), a.cst()),
                      Budget{3, 0});
  REQUIRE(std::holds_alternative<Unknown>(tiny));
  CHECK(std::get<Unknown>(tiny).report.exhausted);
}

TEST_CASE("open goals are decided over their own variables") {
  Arrow a;
  Term x = a.sig->variable("x", a.A);
  Equation goal = makeEquation(a.app(a.g, a.app(a.idA, x)), a.app(a.idB, a.app(a.g, x)));
  auto d = derives(*a.sig, a.E, goal, Budget{4, 1000});
  REQUIRE(std::holds_alternative<Proved>(d));
  CHECK_FALSE(checkTrace(*a.sig, a.E, std::get<Proved>(d).trace, goal));
}

TEST_CASE("satisfies") {
  Arrow a;
  FinAlgebra alg(a.sig);
  alg.setCarrierSize(a.A, 2);
  alg.setCarrierSize(a.B, 2);
  alg.setTable(a.idA, {0, 1});
  alg.setTable(a.idB, {0, 1});
  alg.setTable(a.g, {1, 1});
  alg.setTable(a.c, {0});
  REQUIRE(alg.isTotal());
  Term x = a.sig->variable("x", a.A);
  CHECK(satisfies(alg, makeEquation(x, x)));
  CHECK(satisfies(alg, a.E[0]));
  // g is constant on a two-element carrier; f(x) ≈ x over a shared carrier fails.
  alg.setTable(a.idA, {1, 1});
  CHECK_FALSE(satisfies(alg, a.E[0]));
  auto w = findViolation(alg, a.E[0]);
  REQUIRE(w);
  CHECK(w->at(x) == 0);
}

TEST_CASE("satisfaction respects deduction") {
  Arrow a;
  // Every total algebra over carriers of size 2 with identities interpreted
  // as identities satisfies E; each Proved closed goal must then hold.
  std::vector<Equation> proved;
  Budget b{4, 1000};
  BoundedCongruence cc(*a.sig, a.E, b);
  for (const auto &cls : cc.classes())
    for (Term t : cls)
      if (isClosed(t) && isClosed(cls.front()))
        proved.push_back(makeEquation(cls.front(), t));
  REQUIRE(proved.size() > 5);
  for (int gtab = 0; gtab < 4; ++gtab) {
    for (int cv = 0; cv < 2; ++cv) {
      FinAlgebra alg(a.sig);
      alg.setCarrierSize(a.A, 2);
      alg.setCarrierSize(a.B, 2);
      alg.setTable(a.idA, {0, 1});
      alg.setTable(a.idB, {0, 1});
      alg.setTable(a.g, {gtab & 1, gtab >> 1});
      alg.setTable(a.c, {cv});
      for (const auto &e : a.E)
        REQUIRE(satisfies(alg, e));
      for (const auto &goal : proved)
        CHECK(satisfies(alg, goal));
    }
  }
  for (const auto &goal : proved) {
    auto trace = cc.explain(goal.lhs, goal.rhs);
    REQUIRE(trace);
    CHECK_FALSE(checkTrace(*a.sig, a.E, *trace, goal));
  }
}

TEST_CASE("homomorphism squares are checked exhaustively") {
  Arrow a;
  auto make = [&](std::vector<int> g) {
    FinAlgebra alg(a.sig);
    alg.setCarrierSize(a.A, 2);
    alg.setCarrierSize(a.B, 2);
    alg.setTable(a.idA, {0, 1});
    alg.setTable(a.idB, {0, 1});
    alg.setTable(a.g, g);
    alg.setTable(a.c, {0});
    return alg;
  };
  FinAlgebra from = make({0, 1}), to = make({1, 0});
  CHECK_FALSE(homomorphismViolation(from, to, AlgebraHom{{{0, 1}, {1, 0}}}));
  CHECK(homomorphismViolation(from, to, AlgebraHom{{{0, 1}, {0, 1}}}));
}
