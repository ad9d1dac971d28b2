#include "doctest.h"

#include "samples.hpp"

using namespace catwb::fincat;
using samples::n;

TEST_CASE("delta is a category with the brute-force morphism count") {
  const FinCategory &d = *samples::delta();
  CHECK(validateCategory(d).empty());
  std::size_t expected = 0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      std::size_t p = 1;
      for (int i = 0; i < a; ++i)
        p *= static_cast<std::size_t>(b);
      expected += p;
    }
  CHECK(d.objectCount() == 3);
  CHECK(d.morphismCount() == expected);
  CHECK(finSetSkeleton(2).morphismCount() == expected);
  CHECK(validateCategory(finSetSkeleton(3)).empty());
}

TEST_CASE("every single-entry composition mutation is flagged") {
  const FinCategory &d = *samples::delta();
  std::size_t mutations = 0, missed = 0;
  for (MorId g = 0; g < d.morphismCount(); ++g)
    for (MorId f = 0; f < d.morphismCount(); ++f) {
      auto h = d.compositeEntry(g, f);
      if (!h)
        continue;
      for (MorId alt = 0; alt < d.morphismCount(); ++alt) {
        if (alt == *h)
          continue;
        FinCategory bad = d;
        bad.setComposite(g, f, alt);
        ++mutations;
        if (validateCategory(bad).empty())
          ++missed;
      }
    }
  CHECK(mutations > 0);
  CHECK(missed == 0);
}

TEST_CASE("validation reports the witnessing morphisms") {
  FinCategory d = *samples::delta();
  MorId swap = *d.findMorphism("swap"), c0 = *d.findMorphism("c0"), c1 = *d.findMorphism("c1");
  d.setComposite(swap, swap, c0);
  auto errors = validateCategory(d);
  REQUIRE_FALSE(errors.empty());
  bool sawAssoc = false;
  for (const auto &e : errors)
    sawAssoc = sawAssoc || e.kind == CategoryError::Kind::NonAssociative;
  CHECK(sawAssoc);

  FinCategory partial = *samples::delta();
  partial.clearComposite(c1, c0);
  errors = validateCategory(partial);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].kind == CategoryError::Kind::PartialComposition);
  CHECK(errors[0].morphisms == std::vector<MorId>{c1, c0});
}

TEST_CASE("one-object one-morphism category") {
  FinCategory c;
  ObjId a = c.addObject("a");
  MorId id = c.addMorphism("id", a, a);
  c.setIdentity(a, id);
  c.setComposite(id, id, id);
  CHECK(validateCategory(c).empty());
}

TEST_CASE("opposite") {
  const FinCategory &d = *samples::delta();
  FinCategory op = opposite(d);
  CHECK(op.objectCount() == 3);
  CHECK(op.hom(n(2), n(1)).size() == d.hom(n(1), n(2)).size());
  CHECK(op.hom(n(2), n(1)).size() == 2);
  CHECK(validateCategory(op).empty());
  CHECK(opposite(op).sameTables(d));
  CHECK(opposite(op).name() == d.name());
}

TEST_CASE("product cones") {
  const FinCategory &op = *samples::deltaOp();
  auto sum = samples::deltaOpSum()[0];
  CHECK(isProductCone(op, sum));
  CHECK(op.hom(n(2), n(2)).size() == op.hom(n(2), n(1)).size() * op.hom(n(2), n(1)).size());

  // n1 is terminal in delta, so the identity cone n1 <- n1 -> n1 is a
  // product there; in the opposite it fails from n2.
  const FinCategory &d = *samples::delta();
  MorId id1 = d.identity(n(1));
  CHECK(isProductCone(d, ProductCone::binary("diag", n(1), id1, id1, d)));
  auto check = isProductCone(op, ProductCone::binary("diag", n(1), id1, id1, op));
  REQUIRE_FALSE(check);
  CHECK(check.witness->from == n(2));
  CHECK(check.witness->mediators.size() != 1);

  CHECK(isProductCone(d, ProductCone::terminal("one", n(1))));
  CHECK_FALSE(isProductCone(d, ProductCone::terminal("two", n(2))));
  CHECK(isProductCone(op, ProductCone::terminal("init", n(0))));

  // The coproduct cone in delta is the same data as the product cone in its opposite.
  auto asCoproduct = ProductCone::binary("sum", n(2), *op.findMorphism("inl"),
                                         *op.findMorphism("inr"), op);
  CHECK(bool(isProductCone(opposite(op), asCoproduct)) == false);
  CHECK(bool(isProductCone(op, asCoproduct)));
}

TEST_CASE("cone collections") {
  auto cones = samples::deltaOpCones();
  CHECK(cones.validate(*samples::deltaOp()).empty());
  CHECK_FALSE(cones.apexCycle(*samples::deltaOp()));
  CHECK(cones.oneConePerApex());
  CHECK(cones.conesAt(n(2)) == std::vector<std::size_t>{0});
}

TEST_CASE("yoneda functors") {
  auto op = samples::deltaOp();
  for (ObjId a = 0; a < 3; ++a) {
    FinFunctor y = yoneda(op, a);
    CHECK(y.validate().empty());
    CHECK(y.findElement(a, op->morphismName(op->identity(a))));
    for (ObjId x = 0; x < 3; ++x)
      CHECK(y.carrierSize(x) == samples::delta()->hom(x, a).size());
  }
  CHECK(yoneda(op, n(2)).carrierSize(n(1)) == 2);
  FinFunctor y2 = yoneda(op, n(2));
  MorId id2 = op->identity(n(2));
  for (std::size_t i = 0; i < y2.carrierSize(n(2)); ++i)
    CHECK(y2.apply(id2, static_cast<int>(i)) == static_cast<int>(i));
  for (MorId h = 0; h < op->morphismCount(); ++h)
    CHECK(isNatural(yoneda(op, op->cod(h)), yoneda(op, op->dom(h)), yonedaMap(*op, h)));
}

TEST_CASE("Yoneda lemma on delta") {
  auto op = samples::deltaOp();
  for (const FinFunctor &F : samples::deltaPresheaves()) {
    REQUIRE(F.validate().empty());
    for (ObjId a = 0; a < 3; ++a) {
      FinFunctor y = yoneda(op, a);
      auto all = enumerateNatTrans(y, F);
      CHECK(all.size() == F.carrierSize(a));
      for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(isNatural(y, F, all[i]));
        NatTrans back = yonedaTransformation(F, a, yonedaElement(*op, all[i], a));
        CHECK(back == all[i]);
        if (i > 0)
          CHECK_FALSE(all[i] == all[i - 1]);
      }
      for (std::size_t x = 0; x < F.carrierSize(a); ++x)
        CHECK(yonedaElement(*op, yonedaTransformation(F, a, static_cast<int>(x)), a) ==
              static_cast<int>(x));
    }
  }
}

TEST_CASE("coproducts of presheaves") {
  auto op = samples::deltaOp();
  FinFunctor y1 = yoneda(op, n(1)), y2 = yoneda(op, n(2));
  Coproduct c = coproductPresheaf(y1, y2);
  CHECK(c.sum.validate().empty());
  for (ObjId a = 0; a < 3; ++a)
    CHECK(c.sum.carrierSize(a) == y1.carrierSize(a) + y2.carrierSize(a));
  CHECK(isNatural(y1, c.sum, c.inl));
  CHECK(isNatural(y2, c.sum, c.inr));

  // Universal property against every test cone into the three colourings.
  FinFunctor K = samples::threeColourings();
  for (const NatTrans &a : enumerateNatTrans(y1, K))
    for (const NatTrans &b : enumerateNatTrans(y2, K)) {
      std::size_t matches = 0;
      for (const NatTrans &h : enumerateNatTrans(c.sum, K))
        if (composeNat(h, c.inl) == a && composeNat(h, c.inr) == b)
          ++matches;
      CHECK(matches == 1);
      CHECK(composeNat(copair(c, a, b), c.inl) == a);
    }
}

TEST_CASE("coproduct counterexample count on delta") {
  auto op = samples::deltaOp();
  FinFunctor y1 = yoneda(op, n(1));
  Coproduct c = coproductPresheaf(y1, y1);
  FinFunctor y2 = yoneda(op, n(2));
  auto all = enumerateNatTrans(y2, c.sum);
  CHECK(all.size() == 2 * samples::delta()->hom(n(2), n(1)).size());
  CHECK(all.size() == 2);
}

TEST_CASE("iso check") {
  FinFunctor F = samples::twoPoints();
  CHECK(functorIsoCheck(F, F, identityNat(F)));
  CHECK(functorIsoCheck(F, F, composeNat(identityNat(F), identityNat(F))));
  FinFunctor T = terminalFunctor(samples::deltaOp());
  auto toT = enumerateNatTrans(F, T);
  REQUIRE(toT.size() == 1);
  CHECK_FALSE(functorIsoCheck(F, T, toT[0]));
}

TEST_CASE("cone preservation") {
  auto cones = samples::deltaOpCones();
  auto op = samples::deltaOp();
  for (ObjId a = 0; a < 3; ++a)
    CHECK(preservesCones(yoneda(op, a), cones));
  CHECK(preservesCones(terminalFunctor(op), cones));
  auto r = preservesCones(samples::twoPoints(), cones);
  CHECK_FALSE(r);
  CHECK_FALSE(r.witness.empty());
  CHECK(preservesCones(samples::threeColourings(), cones));
}

TEST_CASE("sample categories") {
  CHECK(validateCategory(*samples::diamond()).empty());
  CHECK(samples::diamond()->morphismCount() == 9);
  CHECK(validateCategory(*samples::equalizerCategory()).empty());
  CHECK(samples::equalizerFunctor().validate().empty());
  CHECK(samples::equalizerMutant().validate().empty());
}

TEST_CASE("functor enumeration") {
  bool exhausted = false;
  auto fs = enumerateFunctors(samples::diamond(), FunctorSearch{2, 1'000'000, 0}, exhausted);
  CHECK_FALSE(exhausted);
  for (const auto &f : fs)
    CHECK(f.validate().empty());
  // Functors from a poset with carriers in {1,2}: count independently on the
  // two-element chain, where they are the maps between the carriers.
  auto chain = std::make_shared<const FinCategory>(posetCategory({"p", "q"}, {{0, 1}}));
  auto cs = enumerateFunctors(chain, FunctorSearch{2, 1'000'000, 0}, exhausted);
  CHECK(cs.size() == 1 + 1 + 2 + 4);
  auto keep = [&](const FinFunctor &f) { return bool(preservesCones(f, samples::deltaOpCones())); };
  auto pres = enumerateFunctors(samples::deltaOp(), FunctorSearch{3, 1'000'000, 0}, exhausted, keep);
  CHECK_FALSE(exhausted);
  CHECK(pres.size() == 1);
}
