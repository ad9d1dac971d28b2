#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "catwb/completion/adjunction.hpp"
#include "catwb/completion/reflected.hpp"
#include "catwb/msa/derivation.hpp"
#include "catwb/msa/enumerate.hpp"
#include "catwb/msa/parse.hpp"
#include "samples.hpp"

using namespace catwb;
using namespace catwb::completion;
using samples::n;

namespace {

ReflectedPresheaf &twoPointsL() {
  static ReflectedPresheaf r(samples::deltaOp(), samples::deltaOpCones(), samples::twoPoints());
  return r;
}

msa::Term T(const ReflectedPresheaf &r, const char *text) {
  return msa::parseTerm(*r.theory().sig, text);
}

std::string nf(const ReflectedPresheaf &r, const char *text) {
  return r.show(r.normalize(T(r, text)));
}

MorId mor(const char *name) { return *samples::deltaOp()->findMorphism(name); }

} // namespace

TEST_CASE("term parser") {
  auto &r = twoPointsL();
  CHECK(r.theory().sig->show(T(r, "inl( pair(n1.l_id1,n1.r_id1) )")) ==
        "inl(pair(n1.l_id1, n1.r_id1))");
  CHECK_THROWS_AS(T(r, "nope"), msa::ParseError);
  CHECK_THROWS_AS(T(r, "inl(n1.l_id1)"), msa::IllSorted);
  try {
    T(r, "pair(n1.l_id1 n1.r_id1)");
    FAIL("expected a parse error");
  } catch (const msa::ParseError &e) {
    CHECK(e.column() == 15);
  }
}

TEST_CASE("normalization examples") {
  auto &r = twoPointsL();
  REQUIRE(r.hasCanonicalForms());
  CHECK(nf(r, "inl(pair(n1.l_id1, n1.r_id1))") == "n1.l_id1");
  CHECK(nf(r, "inr(pair(n1.l_id1, n1.r_id1))") == "n1.r_id1");
  // pair-eta on a constant of apex sort
  CHECK(r.normalize(T(r, "pair(inl(n2.l_t21), inr(n2.l_t21))")) == r.normalize(T(r, "n2.l_t21")));
  // a constant at an apex is expanded
  CHECK(nf(r, "n2.l_t21") == "pair(n1.l_id1, n1.l_id1)");
  CHECK(nf(r, "n0.l_e01") == "unit");
  // e02 = e01∘inl
  CHECK(r.normalize(T(r, "e02(pair(n1.l_id1, n1.r_id1))")) ==
        r.normalize(T(r, "e01(n1.l_id1)")));
  CHECK(nf(r, "swap(pair(n1.l_id1, n1.r_id1))") == "pair(n1.r_id1, n1.l_id1)");
  CHECK(nf(r, "c0(pair(n1.l_id1, n1.r_id1))") == "pair(n1.l_id1, n1.l_id1)");
  CHECK(nf(r, "t21(n1.r_id1)") == "pair(n1.r_id1, n1.r_id1)");
  CHECK(nf(r, "id1(inr(swap(t21(n1.l_id1))))") == "n1.l_id1");
}

TEST_CASE("constant expansion agrees with the bounded oracle") {
  auto &r = twoPointsL();
  const auto &th = r.theory();
  auto goal = msa::makeEquation(T(r, "n2.l_t21"), T(r, "pair(n1.l_id1, n1.l_id1)"));
  auto d = msa::derives(*th.sig, th.equations, goal, {5, 200000});
  if (auto *u = std::get_if<msa::Unknown>(&d))
    MESSAGE(u->report.describe());
  REQUIRE(std::holds_alternative<msa::Proved>(d));
  CHECK_FALSE(msa::checkTrace(*th.sig, th.equations, std::get<msa::Proved>(d).trace, goal));
  auto g2 = msa::makeEquation(T(r, "e02(pair(n1.l_id1, n1.r_id1))"), T(r, "e01(n1.l_id1)"));
  CHECK(std::holds_alternative<msa::Proved>(msa::derives(*th.sig, th.equations, g2, {5, 200000})));
}

TEST_CASE("eta and action") {
  auto &r = twoPointsL();
  const auto &c = r.category();
  const auto &f = r.source();
  for (MorId m = 0; m < c.morphismCount(); ++m) {
    for (int x = 0; x < static_cast<int>(f.carrierSize(c.dom(m))); ++x) {
      auto res = r.equal(r.act(m, r.eta(c.dom(m), x)), r.eta(c.cod(m), f.apply(m, x)));
      CHECK(res.kind == EqResult::Kind::Equal);
    }
  }
  auto t = T(r, "swap(pair(n1.l_id1, n1.r_id1))");
  CHECK(r.equal(r.act(c.identity(n(2)), t), t).kind == EqResult::Kind::Equal);
  for (MorId g = 0; g < c.morphismCount(); ++g)
    for (MorId h = 0; h < c.morphismCount(); ++h)
      if (c.dom(g) == n(2) && c.cod(g) == c.dom(h))
        CHECK(r.equal(r.act(h, r.act(g, t)), r.act(c.compose(h, g), t)).kind ==
              EqResult::Kind::Equal);
  CHECK_THROWS_AS(r.act(mor("inl"), T(r, "n1.l_id1")), msa::IllSorted);
}

TEST_CASE("equal: examples and errors") {
  auto &r = twoPointsL();
  auto t = T(r, "c1(n2.r_t21)");
  CHECK(r.equal(t, t).kind == EqResult::Kind::Equal);
  CHECK(r.equal(T(r, "inl(pair(n1.l_id1, n1.r_id1))"), T(r, "n1.l_id1")).kind ==
        EqResult::Kind::Equal);
  auto res = r.equal(T(r, "n1.l_id1"), T(r, "n1.r_id1"));
  REQUIRE(res.kind == EqResult::Kind::Distinct);
  REQUIRE(res.separator);
  // F does not preserve the cones; a representable separates.
  CHECK(res.separator->source == "b");
  CHECK(res.separator->lhs != res.separator->rhs);
  GammaHat hat(r.theory(), res.separator->model->target, res.separator->model->gamma);
  CHECK(hat(T(r, "n1.l_id1")) == res.separator->lhs);
  CHECK(hat(T(r, "n1.r_id1")) == res.separator->rhs);
  CHECK_THROWS_AS(r.equal(T(r, "n1.l_id1"), T(r, "n2.l_t21")), msa::SortMismatch);
  auto x = r.theory().sig->variable("x", msa::SortId{n(1)});
  CHECK_THROWS_AS(r.equal(x, x), std::invalid_argument);
}

TEST_CASE("distinct constants of a cone-preserving functor: separator is F itself") {
  FinFunctor y2 = fincat::yoneda(samples::deltaOp(), n(2));
  ReflectedPresheaf r(samples::deltaOp(), samples::deltaOpCones(), y2);
  const auto &f = r.source();
  for (ObjId a = 0; a < 3; ++a)
    for (int x = 0; x < static_cast<int>(f.carrierSize(a)); ++x)
      for (int y = x + 1; y < static_cast<int>(f.carrierSize(a)); ++y) {
        auto res = r.equal(r.eta(a, x), r.eta(a, y));
        REQUIRE(res.kind == EqResult::Kind::Distinct);
        CHECK(res.separator->source == "a");
        CHECK(res.separator->model->gamma == fincat::identityNat(f));
      }
}

TEST_CASE("L(F) on delta has seven classes and NbE is sound against the oracle") {
  auto &r = twoPointsL();
  const auto &th = r.theory();
  msa::TermLayers layers(*th.sig, 6);
  auto all = layers.all();
  auto cc = msa::BoundedCongruence::overUniverse(*th.sig, th.equations, all, 200000);
  REQUIRE_FALSE(cc.report().exhausted);
  std::set<std::uint32_t> values;
  std::size_t classes = 0, unsound = 0;
  for (const auto &cls : cc.classes()) {
    ++classes;
    Value v = r.normalize(cls.front());
    values.insert(v.id);
    for (auto t : cls)
      unsound += !(r.normalize(t) == v);
  }
  CHECK(unsound == 0);
  CHECK(values.size() == 7);
  // Each value has a representative in the universe and distinct values are separated.
  std::map<std::uint32_t, msa::Term> rep;
  for (auto t : all)
    rep.emplace(r.normalize(t).id, t);
  for (auto &[a, s] : rep)
    for (auto &[b, t] : rep)
      if (a < b && s.sort() == t.sort())
        CHECK(r.equal(s, t).kind == EqResult::Kind::Distinct);
}

TEST_CASE("normal forms: idempotent and a congruence") {
  auto &r = twoPointsL();
  const auto &c = r.category();
  msa::TermLayers layers(*r.theory().sig, 5);
  auto all = layers.all();
  for (auto t : all) {
    Value v = r.normalize(t);
    CHECK(r.normalize(r.readback(v)) == v);
    CHECK(r.readback(v).size() <= 7);
  }
  std::map<std::uint32_t, std::vector<msa::Term>> byNf;
  for (auto t : all)
    byNf[r.normalize(t).id].push_back(t);
  for (auto &[v, ts] : byNf)
    for (MorId m = 0; m < c.morphismCount(); ++m)
      if (c.dom(m) == ts.front().sort().value)
        for (auto t : ts)
          CHECK(r.normalize(r.act(m, t)) == r.normalize(r.act(m, ts.front())));
}

TEST_CASE("gamma hat is well defined on oracle-proved pairs") {
  auto &r = twoPointsL();
  const auto &th = r.theory();
  msa::TermLayers layers(*th.sig, 5);
  auto cc = msa::BoundedCongruence::overUniverse(*th.sig, th.equations, layers.all(), 100000);
  std::vector<std::pair<msa::Term, msa::Term>> proved;
  for (const auto &cls : cc.classes())
    for (std::size_t i = 1; i < cls.size() && proved.size() < 200; ++i)
      proved.emplace_back(cls[0], cls[i]);
  REQUIRE(proved.size() == 200);
  FinFunctor y2 = fincat::yoneda(samples::deltaOp(), n(2));
  auto gammas = fincat::enumerateNatTrans(r.source(), y2);
  CHECK(gammas.size() == 4);
  for (const auto &g : gammas) {
    GammaHat hat(th, y2, g);
    for (auto &[s, t] : proved)
      CHECK(hat(s) == hat(t));
    for (ObjId a = 0; a < 3; ++a)
      for (int x = 0; x < static_cast<int>(r.source().carrierSize(a)); ++x)
        CHECK(hat(r.eta(a, x)) == g.at(a, x));
    CHECK(hat(T(r, "inl(pair(n1.l_id1, n1.r_id1))")) == hat(T(r, "n1.l_id1")));
  }
  CHECK_THROWS_AS(GammaHat(th, r.source(), fincat::identityNat(r.source())), NotConePreserving);
  NatTrans bad = gammas.front();
  bad.components[n(1)][0] = (bad.components[n(1)][0] + 1) % 2;
  CHECK_THROWS_AS(GammaHat(th, y2, bad), std::invalid_argument);
}

TEST_CASE("map_L") {
  auto &r = twoPointsL();
  const auto &th = r.theory();
  auto id = fincat::identityNat(r.source());
  msa::TermLayers layers(*th.sig, 4);
  auto all = layers.all();
  for (auto t : all)
    CHECK(mapL(th, th, id, t) == t);
  // the swap of the two summands
  auto cp = fincat::coproductPresheaf(fincat::yoneda(samples::deltaOp(), n(1)),
                                      fincat::yoneda(samples::deltaOp(), n(1)));
  NatTrans sw = fincat::copair(cp, cp.inr, cp.inl);
  NatTrans sw2 = fincat::composeNat(sw, sw);
  for (auto t : all) {
    CHECK(mapL(th, th, sw2, t) == mapL(th, th, sw, mapL(th, th, sw, t)));
    CHECK(mapL(th, th, sw2, t) == t);
  }
  CHECK(th.sig->show(mapL(th, th, sw, T(r, "inl(n2.l_t21)"))) == "inl(n2.r_t21)");
  for (ObjId a = 0; a < 3; ++a)
    for (int x = 0; x < static_cast<int>(r.source().carrierSize(a)); ++x)
      CHECK(mapL(th, th, sw, r.eta(a, x)) == r.eta(a, sw.at(a, x)));
}

TEST_CASE("saturation agrees with normalization on small terms") {
  ReflectedPresheaf s(samples::deltaOp(), samples::deltaOpCones(), samples::twoPoints(),
                      EngineConfig{EngineMode::Saturation, {9, 10000}});
  auto &r = twoPointsL();
  const char *equalPairs[][2] = {
      {"inl(pair(n1.l_id1, n1.r_id1))", "n1.l_id1"},
      {"pair(inl(n2.l_t21), inr(n2.l_t21))", "n2.l_t21"},
      {"e02(pair(n1.l_id1, n1.r_id1))", "e01(n1.l_id1)"},
      {"swap(swap(n2.r_t21))", "n2.r_t21"},
      {"n2.l_t21", "pair(n1.l_id1, n1.l_id1)"},
      {"c0(pair(n1.l_id1, n1.r_id1))", "pair(n1.l_id1, n1.l_id1)"},
  };
  for (auto &p : equalPairs) {
    auto a = T(s, p[0]), b = T(s, p[1]);
    auto res = s.equal(a, b);
    CHECK_MESSAGE(res.kind == EqResult::Kind::Equal, p[0]);
    CHECK(res.engine == EngineMode::Saturation);
    CHECK(r.equal(T(r, p[0]), T(r, p[1])).kind == EqResult::Kind::Equal);
  }
  auto res = s.equal(T(s, "n1.l_id1"), T(s, "n1.r_id1"));
  CHECK(res.kind == EqResult::Kind::Distinct);
  CHECK(res.engine == EngineMode::Saturation);
}

TEST_CASE("no canonical form with two cones at one apex") {
  auto cones = samples::deltaOpCones();
  const auto &c = *samples::deltaOp();
  cones.add(fincat::ProductCone::binary("flip", n(2), mor("inr"), mor("inl"), c));
  ReflectedPresheaf r(samples::deltaOp(), cones, samples::twoPoints());
  CHECK_FALSE(r.hasCanonicalForms());
  CHECK_THROWS_AS(r.normalize(r.eta(n(1), 0)), NoCanonicalForm);
  auto res = r.equal(T(r, "inl(pair.sum(n1.l_id1, n1.r_id1))"),
                     T(r, "inr(pair.flip(n1.l_id1, n1.r_id1))"));
  CHECK(res.kind == EqResult::Kind::Equal);
  CHECK(res.engine == EngineMode::Saturation);
  CHECK(res.note.find("no canonical form") != std::string::npos);
  auto ne = r.equal(T(r, "n1.l_id1"), T(r, "n1.r_id1"));
  CHECK(ne.kind == EqResult::Kind::Distinct);
}

TEST_CASE("unknown when no separator and no proof") {
  ReflectedPresheaf r(samples::deltaOp(), samples::deltaOpCones(), samples::twoPoints(),
                      EngineConfig{EngineMode::Saturation, {1, 1}});
  auto res = r.equal(T(r, "n2.l_t21"), T(r, "pair(n1.l_id1, n1.l_id1)"));
  CHECK(res.kind == EqResult::Kind::Unknown);
  CHECK(res.budget.exhausted);
}

TEST_CASE("universal property on delta with G = y(n2)") {
  auto &r = twoPointsL();
  FinFunctor y2 = fincat::yoneda(samples::deltaOp(), n(2));
  auto samplesA = sampleTerms(r, 40, 6, 7);
  auto samplesB = sampleTerms(r, 40, 6, 7);
  CHECK(samplesA == samplesB);
  CHECK(samplesA.size() == 40);
  auto closed = closeSamples(r, samplesA);
  for (const auto &g : fincat::enumerateNatTrans(r.source(), y2)) {
    auto rep = checkUniversalProperty(r, y2, g, closed);
    CHECK_MESSAGE(rep.ok(), rep.describe());
    CHECK(rep.solutions == 1);
    CHECK(rep.classes <= 7);
  }
  // constants only: forced by h∘η = γ
  std::vector<msa::Term> consts;
  for (ObjId a = 0; a < 3; ++a)
    for (int x = 0; x < static_cast<int>(r.source().carrierSize(a)); ++x)
      consts.push_back(r.eta(a, x));
  auto gamma = fincat::enumerateNatTrans(r.source(), y2).back();
  auto rep = checkUniversalProperty(r, y2, gamma, consts);
  CHECK(rep.ok());
  CHECK(rep.solutions == 1);
  CHECK(rep.constraints == 0);
  // corrupt one component: γ̂ (built from the original γ) disagrees at (1)
  NatTrans bad = gamma;
  bad.components[n(1)][1] = (bad.components[n(1)][1] + 1) % 2;
  auto broken = checkUniversalProperty(r, y2, bad, closed, &gamma);
  CHECK_FALSE(broken.unitLaw);
  CHECK(broken.unitWitness.find("n1.r_id1") != std::string::npos);
  CHECK(broken.naturality);
}

TEST_CASE("separator search order and user models") {
  auto &r = twoPointsL();
  CHECK(r.candidateCount() > 0);
  ReflectedPresheaf r2(samples::deltaOp(), samples::deltaOpCones(), samples::twoPoints(),
                       EngineConfig{});
  FinFunctor y2 = fincat::yoneda(samples::deltaOp(), n(2));
  auto gamma = fincat::enumerateNatTrans(r2.source(), y2).back();
  r2.addModel({"mine", y2, gamma});
  auto sep = r2.findSeparator(T(r2, "n1.l_id1"), T(r2, "n1.r_id1"));
  REQUIRE(sep);
  CHECK(sep->source == "b"); // representables come before user models
}

namespace {

// Functions between sets of sizes 1, 2, 4; n4 = n2 × n2 and n1 terminal.
struct Boolean {
  std::shared_ptr<const FinCategory> cat =
      std::make_shared<const FinCategory>(fincat::finSetCategory({1, 2, 4}));
  ObjId n1 = *cat->findObject("n1"), n2 = *cat->findObject("n2"), n4 = *cat->findObject("n4");
  MorId fst = *cat->findMorphism("m4_2_0011"), snd = *cat->findMorphism("m4_2_0101");
  ConeCollection cones() const {
    ConeCollection c;
    c.add(fincat::ProductCone::binary("prod", n4, fst, snd, *cat));
    c.add(fincat::ProductCone::terminal("one", n1));
    return c;
  }
};

msa::Term randomTerm(const ReflectedPresheaf &r, ObjId sort, int depth, std::mt19937_64 &rng) {
  const auto &c = r.category();
  const auto &th = r.theory();
  std::uniform_int_distribution<int> coin(0, 9);
  if (depth == 0 || coin(rng) < 2) {
    auto size = r.source().carrierSize(sort);
    if (size > 0)
      return r.eta(sort, std::uniform_int_distribution<int>(0, int(size) - 1)(rng));
  }
  if (auto k = th.cones.conesAt(sort); !k.empty() && coin(rng) < 4) {
    const auto &cone = th.cones[k.front()];
    if (cone.nullary)
      return th.sig->constant(*th.coneSymbols[k.front()]);
    return th.sig->apply(*th.coneSymbols[k.front()],
                         {randomTerm(r, cone.left, depth - 1, rng),
                          randomTerm(r, cone.right, depth - 1, rng)});
  }
  std::vector<MorId> into;
  for (MorId m = 0; m < c.morphismCount(); ++m)
    if (c.cod(m) == sort)
      into.push_back(m);
  MorId m = into[std::uniform_int_distribution<std::size_t>(0, into.size() - 1)(rng)];
  return r.act(m, randomTerm(r, c.dom(m), depth - 1, rng));
}

} // namespace

TEST_CASE("free algebra on two generators over Boolean functions") {
  Boolean b;
  auto y2 = fincat::yoneda(b.cat, b.n2);
  auto cp = fincat::coproductPresheaf(y2, y2);
  ReflectedPresheaf r(b.cat, b.cones(), cp.sum);
  REQUIRE(r.hasCanonicalForms());
  auto y4 = fincat::yoneda(b.cat, b.n4);
  // The generic pair: l ↦ m∘fst, r ↦ m∘snd. γ̂ is then an isomorphism.
  NatTrans gamma = fincat::copair(cp, fincat::yonedaMap(*b.cat, b.fst), fincat::yonedaMap(*b.cat, b.snd));
  GammaHat hat(r.theory(), y4, gamma);
  std::mt19937_64 rng(11);
  for (ObjId s : {b.n1, b.n2, b.n4}) {
    std::vector<msa::Term> ts;
    for (int i = 0; i < 400; ++i)
      ts.push_back(randomTerm(r, s, 5, rng));
    std::map<std::uint32_t, int> nfToElem;
    std::map<int, msa::Term> witness;
    std::size_t mismatches = 0, incomplete = 0;
    for (auto t : ts) {
      auto v = r.normalize(t);
      int e = hat(t);
      auto [it, fresh] = nfToElem.emplace(v.id, e);
      mismatches += it->second != e; // equal normal forms must give equal values
      auto [w, first] = witness.emplace(e, t);
      if (fresh && !first) {
        // Same element of the free algebra, different normal forms: the
        // engine may not call them distinct.
        ++incomplete;
        CHECK(r.equal(w->second, t).kind != EqResult::Kind::Distinct);
      }
    }
    CHECK(mismatches == 0);
    CHECK(witness.size() <= y4.carrierSize(s));
    MESSAGE("sort " << r.category().objectName(s) << ": " << nfToElem.size() << " normal forms, "
                    << witness.size() << " elements, " << incomplete << " incomplete");
  }
  // AND(pair(a, a)) ≈ a needs the diagonal section.
  MorId andM = *b.cat->findMorphism("m4_2_0001");
  auto a = r.act(*b.cat->findMorphism("m2_2_10"), r.eta(b.n2, 0));
  auto t = r.act(andM, r.theory().sig->apply(*r.theory().coneSymbols[0], {a, a}));
  CHECK(r.normalize(t) == r.normalize(a));
  auto cv = r.crossValidate({2, 100000});
  CHECK(cv.violations == 0);
  CHECK_FALSE(cv.downgraded);
}
