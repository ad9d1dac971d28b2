// Acceptance run: one line per criterion, exit 1 if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "catwb/cli/commands.hpp"
#include "catwb/completion/adjunction.hpp"
#include "catwb/eqlz/equalizer.hpp"
#include "catwb/lambek/embedding.hpp"
#include "catwb/msa/enumerate.hpp"
#include "catwb/theories/theory.hpp"
#include "samples.hpp"

using namespace catwb;
using fincat::FinCategory;
using fincat::FinFunctor;
using fincat::MorId;
using fincat::NatTrans;
using fincat::ObjId;
using samples::n;

namespace {

struct Outcome {
  bool ok = true;
  std::string summary;
  std::vector<std::string> failures;

  void require(bool cond, const std::string &what) {
    if (!cond) {
      ok = false;
      if (failures.size() < 5)
        failures.push_back(what);
    }
  }
};

std::string readFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string corpusPath(const std::string &name) { return std::string(CATWB_CORPUS_DIR) + "/" + name; }

cli::Report runCorpus(const std::string &command, const std::string &file,
                      const std::vector<std::string> &args = {}, cli::Flags flags = {}) {
  return cli::runSource(command, readFile(corpusPath(file)), file, args, flags);
}

std::string firstFailure(const cli::Report &r) {
  for (const auto &c : r.checks())
    if (c.verdict != Verdict::Pass)
      return c.id + " " + verdictName(c.verdict) + (c.witness.empty() ? "" : ": " + c.witness);
  return "";
}

// |{functions a -> b}| = b^a, summed over the objects 0, 1, 2.
std::size_t bruteForceMorphisms(int maxCard) {
  std::size_t total = 0;
  for (int a = 0; a <= maxCard; ++a)
    for (int b = 0; b <= maxCard; ++b) {
      std::size_t p = 1;
      for (int i = 0; i < a; ++i)
        p *= static_cast<std::size_t>(b);
      total += p;
    }
  return total;
}

std::size_t homCount(int a, int b) {
  std::size_t p = 1;
  for (int i = 0; i < a; ++i)
    p *= static_cast<std::size_t>(b);
  return p;
}

// ---------------------------------------------------------------------------

Outcome categoryLaws() {
  Outcome o;
  auto v = runCorpus("validate", "delta.cat");
  o.require(v.exitCode() == 0, "validate delta.cat: " + firstFailure(v));
  auto ws = cli::analyze(cli::parseDocument(readFile(corpusPath("delta.cat"))));
  auto d = ws.category("delta");
  o.require(d && d->objectCount() == 3, "3 objects");
  o.require(d && d->morphismCount() == bruteForceMorphisms(2),
            "morphism count " + std::to_string(d ? d->morphismCount() : 0) + " vs brute force " +
                std::to_string(bruteForceMorphisms(2)));
  if (!d)
    return o;

  // Every entry g . f = h replaced by every other morphism: in the table
  // directly, and in the document text.
  std::size_t tableMutations = 0, tableMissed = 0, textMutations = 0, textMissed = 0;
  std::string source = readFile(corpusPath("delta.cat"));
  for (MorId g = 0; g < d->morphismCount(); ++g)
    for (MorId f = 0; f < d->morphismCount(); ++f) {
      auto h = d->compositeEntry(g, f);
      if (!h)
        continue;
      std::string line = d->morphismName(g) + " . " + d->morphismName(f) + " = " +
                         d->morphismName(*h);
      auto at = source.find(" " + line + ";");
      if (at == std::string::npos)
        at = source.find(" " + line + "\n");
      for (MorId alt = 0; alt < d->morphismCount(); ++alt) {
        if (alt == *h)
          continue;
        FinCategory bad = *d;
        bad.setComposite(g, f, alt);
        ++tableMutations;
        if (fincat::validateCategory(bad).empty()) {
          ++tableMissed;
          o.require(false, "table mutation " + line + " -> " + d->morphismName(alt) + " passes");
        }
        if (at == std::string::npos)
          continue; // identity entries are generated, not written
        std::string text = source;
        text.replace(at + 1, line.size(),
                     d->morphismName(g) + " . " + d->morphismName(f) + " = " +
                         d->morphismName(alt));
        ++textMutations;
        if (cli::runSource("validate", text, "mutant.cat", {}, {}).exitCode() == 0) {
          ++textMissed;
          o.require(false, "document mutation " + line + " -> " + d->morphismName(alt) + " passes");
        }
      }
    }
  o.require(textMutations > 0, "no document mutations found");
  o.summary = "delta.cat: " + std::to_string(d->objectCount()) + " objects, " +
              std::to_string(d->morphismCount()) + " morphisms (brute force " +
              std::to_string(bruteForceMorphisms(2)) + "); " + std::to_string(tableMutations) +
              " table mutations, " + std::to_string(tableMissed) + " passed; " +
              std::to_string(textMutations) + " document mutations, " +
              std::to_string(textMissed) + " passed";
  return o;
}

Outcome yonedaLemma() {
  Outcome o;
  auto op = samples::deltaOp();
  std::size_t cases = 0, nats = 0;
  for (const FinFunctor &F : samples::deltaPresheaves())
    for (ObjId a = 0; a < op->objectCount(); ++a) {
      ++cases;
      FinFunctor y = fincat::yoneda(op, a);
      auto all = fincat::enumerateNatTrans(y, F);
      nats += all.size();
      std::string where = F.name() + " at " + op->objectName(a);
      o.require(all.size() == F.carrierSize(a), where + ": count " + std::to_string(all.size()));
      for (const auto &alpha : all)
        o.require(fincat::yonedaTransformation(F, a, fincat::yonedaElement(*op, alpha, a)) == alpha,
                  where + ": transformation does not come back");
      for (int x = 0; x < static_cast<int>(F.carrierSize(a)); ++x)
        o.require(fincat::yonedaElement(*op, fincat::yonedaTransformation(F, a, x), a) == x,
                  where + ": element does not come back");
    }
  o.require(cases == 9, "expected 3 presheaves x 3 objects");
  o.summary = std::to_string(cases) + " (presheaf, object) cases, " + std::to_string(nats) +
              " transformations, both composites identity";
  return o;
}

Outcome introCounterexample() {
  Outcome o;
  auto op = samples::deltaOp();
  FinFunctor y1 = fincat::yoneda(op, n(1)), y2 = fincat::yoneda(op, n(2));
  auto c = fincat::coproductPresheaf(y1, y1);
  auto all = fincat::enumerateNatTrans(y2, c.sum);
  std::size_t yonedaCount = 2 * homCount(2, 1);
  o.require(all.size() == 2, std::to_string(all.size()) + " transformations, expected 2");
  o.require(all.size() == yonedaCount, "Yoneda count " + std::to_string(yonedaCount));

  // [y(inl), y(inr)] : y(1) + y(1) -> y(2), from the elements inl, inr of y(2)(1).
  auto inl = y2.findElement(n(1), "inl"), inr = y2.findElement(n(1), "inr");
  o.require(inl && inr, "inl, inr are elements of y(2)(1)");
  if (!inl || !inr)
    return o;
  NatTrans copairing = fincat::copair(c, fincat::yonedaTransformation(y2, n(1), *inl),
                                      fincat::yonedaTransformation(y2, n(1), *inr));
  o.require(fincat::isNatural(c.sum, y2, copairing), "copairing is natural");
  NatTrans id = fincat::identityNat(c.sum);
  std::size_t inverting = 0;
  for (const auto &f : all)
    inverting += fincat::composeNat(f, copairing) == id;
  o.require(inverting == 0, std::to_string(inverting) + " candidates invert the copairing");

  // The same through the driver on the shipped document.
  auto rep = runCorpus("counterexample", "delta.cat");
  o.require(rep.exitCode() == 0, "counterexample delta.cat: " + firstFailure(rep));
  std::size_t reported = 0;
  for (const auto &chk : rep.checks())
    reported += chk.id.find("/candidate-") != std::string::npos && chk.verdict == Verdict::Pass;
  o.require(reported == 2, std::to_string(reported) + " candidates reported as non-inverting");
  o.summary = std::to_string(all.size()) + " transformations y(2) -> y(1)+y(1) (Yoneda count " +
              std::to_string(yonedaCount) + "), " + std::to_string(inverting) +
              " invert [y(inl), y(inr)]";
  return o;
}

// ---------------------------------------------------------------------------

Outcome correspondences() {
  Outcome o;
  using theories::EquationKind;
  std::size_t categoryTrips = 0, coneTrips = 0, eqTrips = 0;

  auto algebraTrip = [&](const theories::Theory &t, const FinFunctor &F) {
    auto alg = theories::functorToAlgebra(t, F);
    try {
      FinFunctor back = theories::algebraToFunctor(t, alg, F.name());
      auto again = theories::functorToAlgebra(t, back);
      bool same = back.sameTables(F);
      for (std::uint32_t s = 0; s < t.sig->symbolCount(); ++s)
        same = same && again.table(msa::SymbolId{s}) == alg.table(msa::SymbolId{s});
      return same;
    } catch (const theories::NotAModel &e) {
      return false;
    }
  };

  // functors on categories
  struct Sample {
    std::shared_ptr<const FinCategory> cat;
    fincat::ConeCollection cones;
    FinFunctor functor;
  };
  std::vector<Sample> all;
  for (const auto &F : samples::deltaPresheaves())
    all.push_back({samples::deltaOp(), samples::deltaOpCones(), F});
  for (ObjId a = 0; a < 3; ++a)
    all.push_back({samples::deltaOp(), samples::deltaOpCones(), fincat::yoneda(samples::deltaOp(), a)});
  for (const char *file : {"delta.cat", "product.cat", "equalizer.cat"}) {
    auto ws = cli::analyze(cli::parseDocument(readFile(corpusPath(file))));
    for (const auto &f : ws.functors())
      all.push_back({ws.category(f.category), ws.productCones(f.category), f.functor});
  }
  for (const auto &s : all) {
    auto tc = theories::theoryOfCategory(s.cat);
    ++categoryTrips;
    o.require(algebraTrip(tc, s.functor), s.functor.name() + ": category round trip");
    if (s.cones.size() == 0)
      continue;
    auto t = theories::theoryWithCones(s.cat, s.cones);
    auto alg = theories::functorToAlgebra(t, s.functor);
    bool preserves = static_cast<bool>(fincat::preservesCones(s.functor, s.cones));
    auto violation = theories::modelViolation(
        t, alg, {EquationKind::Fst, EquationKind::Snd, EquationKind::PairEta, EquationKind::Unit});
    o.require(preserves == !violation, s.functor.name() + ": preservation vs satisfaction");
    if (preserves) {
      ++coneTrips;
      o.require(algebraTrip(t, s.functor), s.functor.name() + ": cone round trip");
    }
  }

  // equalizers
  auto eqCat = samples::equalizerCategory();
  eqlz::EqualizerCone cone{"E", *eqCat->findMorphism("e"), *eqCat->findMorphism("f"),
                           *eqCat->findMorphism("g")};
  for (const FinFunctor &F : {samples::equalizerFunctor(), samples::equalizerMutant()}) {
    auto et = eqlz::buildEqualizerTheory(eqCat, {}, {cone}, F);
    auto corr = eqlz::correspondenceEq(et, F);
    o.require(corr.agree(), F.name() + ": equalizer preservation vs partial algebra");
    if (corr.preserves) {
      ++eqTrips;
      o.require(corr.roundTrip, F.name() + ": equalizer round trip");
    }
  }

  // a non-preserving functor fails the pair equations with a witness
  auto t = theories::theoryWithCones(samples::deltaOp(), samples::deltaOpSum());
  FinFunctor F = samples::twoPoints();
  bool preserves = static_cast<bool>(fincat::preservesCones(F, samples::deltaOpSum()));
  auto v = theories::modelViolation(t, theories::functorToAlgebra(t, F),
                                    {EquationKind::Fst, EquationKind::Snd, EquationKind::PairEta});
  o.require(!preserves, "y(1)+y(1) should not preserve the sum");
  o.require(v && !v->empty(), "no witness for y(1)+y(1)");
  o.summary = std::to_string(categoryTrips) + " category, " + std::to_string(coneTrips) +
              " cone, " + std::to_string(eqTrips) +
              " equalizer round trips table-identical; y(1)+y(1) fails with " +
              (v ? "\"" + *v + "\"" : std::string("no witness"));
  return o;
}

// ---------------------------------------------------------------------------

Outcome engineVsOracle() {
  Outcome o;
  using completion::EqResult;
  completion::ReflectedPresheaf r(samples::deltaOp(), samples::deltaOpCones(),
                                  samples::twoPoints());
  const auto &th = r.theory();
  const msa::Budget budget{7, 2'000'000};
  // Size 14 enumerates billions of terms; 9 is the largest size that fits.
  const msa::Budget doubled{9, 2 * budget.maxMerges};

  msa::TermLayers layers(*th.sig, budget.maxTermSize);
  auto universe = layers.all();
  auto oracle = msa::BoundedCongruence::overUniverse(*th.sig, th.equations, universe,
                                                     budget.maxMerges);
  o.require(!oracle.report().exhausted, "oracle budget exhausted at size 7");

  // Proved => same normal form, for every pair at once: one normal form per class.
  std::size_t classViolations = 0;
  for (const auto &cls : oracle.classes()) {
    auto v = r.normalize(cls.front());
    for (auto t : cls)
      if (!(r.normalize(t) == v)) {
        ++classViolations;
        o.require(false, th.sig->show(cls.front()) + " and " + th.sig->show(t) +
                             " are proved equal but normalize differently");
      }
  }

  // Sampled pairs through equal().
  std::mt19937_64 rng(20261016);
  std::map<std::uint32_t, std::vector<msa::Term>> bySort;
  for (auto t : universe)
    bySort[t.sort().value].push_back(t);
  std::vector<std::pair<msa::Term, msa::Term>> pairs;
  // every pair of distinct normal forms, then random pairs
  std::map<std::uint32_t, msa::Term> firstWithValue;
  for (auto t : universe)
    firstWithValue.emplace(r.normalize(t).id, t);
  for (auto &[a, s] : firstWithValue)
    for (auto &[b, t] : firstWithValue)
      if (a < b && s.sort() == t.sort())
        pairs.emplace_back(s, t);
  std::vector<std::uint32_t> sorts;
  for (auto &[s, ts] : bySort)
    sorts.push_back(s);
  while (pairs.size() < 5000) {
    const auto &ts = bySort[sorts[rng() % sorts.size()]];
    pairs.emplace_back(ts[rng() % ts.size()], ts[rng() % ts.size()]);
  }
  // half of the random pairs drawn from one oracle class, so proofs are exercised
  std::vector<std::vector<msa::Term>> classes = oracle.classes();
  for (std::size_t k = 0; k < 2500; ++k) {
    const auto &cls = classes[rng() % classes.size()];
    pairs.emplace_back(cls[rng() % cls.size()], cls[rng() % cls.size()]);
  }

  auto big = msa::BoundedCongruence::overUniverse(
      *th.sig, th.equations, msa::TermLayers(*th.sig, doubled.maxTermSize).all(),
      doubled.maxMerges);

  std::size_t proved = 0, equal = 0, distinct = 0, unknown = 0, violations = 0;
  for (auto &[s, t] : pairs) {
    auto res = r.equal(s, t);
    bool isProved = oracle.equivalent(s, t);
    proved += isProved;
    std::string pair = th.sig->show(s) + " ~ " + th.sig->show(t);
    switch (res.kind) {
    case EqResult::Kind::Equal:
      ++equal;
      if (res.lhsNormal != res.rhsNormal) {
        ++violations;
        o.require(false, pair + ": Equal with different normal forms");
      }
      break;
    case EqResult::Kind::Unknown:
      ++unknown;
      break;
    case EqResult::Kind::Distinct: {
      ++distinct;
      const auto &sep = *res.separator;
      // Recompute: the separator is a model of every equation and tells s and t apart.
      auto alg = theories::functorToAlgebra(th, sep.model->target, &sep.model->gamma);
      bool model = true;
      for (const auto &eq : th.equations)
        model = model && msa::satisfies(alg, eq);
      auto a = alg.evaluate(s, {}), b = alg.evaluate(t, {});
      bool separates = a && b && *a == sep.lhs && *b == sep.rhs && *a != *b;
      if (!model || !separates || big.equivalent(s, t)) {
        ++violations;
        o.require(false, pair + ": separator " + sep.model->name + " does not recompute");
      }
      break;
    }
    }
    if (isProved && res.kind != EqResult::Kind::Equal) {
      ++violations;
      o.require(false, pair + ": proved but " + completion::kindName(res.kind));
    }
  }
  o.summary = std::to_string(universe.size()) + " terms of size <= 7 in " +
              std::to_string(oracle.classCount()) + " oracle classes (" +
              std::to_string(classViolations) + " with two normal forms); " +
              std::to_string(pairs.size()) + " pairs: " + std::to_string(proved) + " proved, " +
              std::to_string(equal) + " equal, " + std::to_string(distinct) + " distinct, " +
              std::to_string(unknown) + " unknown, " + std::to_string(violations) +
              " violations; distinct pairs rechecked at size 9, " +
              std::to_string(doubled.maxMerges) + " merges" +
              (big.report().exhausted ? " (budget exhausted)" : "");
  return o;
}

// ---------------------------------------------------------------------------

Outcome adjunction() {
  Outcome o;
  auto op = samples::deltaOp();
  completion::ReflectedPresheaf r(op, samples::deltaOpCones(), samples::twoPoints());
  const auto &th = r.theory();
  auto samplesClosed = completion::closeSamples(r, completion::sampleTerms(r, 40, 6, 1));
  auto oracle = msa::BoundedCongruence::overUniverse(*th.sig, th.equations,
                                                     msa::TermLayers(*th.sig, 6).all(), 200000);
  std::vector<std::pair<msa::Term, msa::Term>> proved;
  for (const auto &cls : oracle.classes())
    for (std::size_t i = 1; i < cls.size() && proved.size() < 200; ++i)
      proved.emplace_back(cls[0], cls[i]);
  o.require(proved.size() == 200, "only " + std::to_string(proved.size()) + " proved pairs");

  std::vector<FinFunctor> targets = {fincat::yoneda(op, n(2)), samples::threeColourings()};
  targets[0].setName("y(2)");
  std::size_t gammas = 0;
  for (const auto &G : targets) {
    o.require(static_cast<bool>(fincat::preservesCones(G, samples::deltaOpCones())),
              G.name() + " does not preserve the cones");
    for (const auto &gamma : fincat::enumerateNatTrans(r.source(), G)) {
      ++gammas;
      std::string where = G.name() + " gamma " + std::to_string(gammas);
      auto rep = completion::checkUniversalProperty(r, G, gamma, samplesClosed);
      o.require(rep.unitLaw, where + ": unit " + rep.unitWitness);
      o.require(rep.naturality, where + ": naturality " + rep.naturalityWitness);
      o.require(rep.uniqueness && rep.solutions == 1 && !rep.searchExhausted,
                where + ": uniqueness " + rep.uniquenessWitness);
      completion::GammaHat hat(th, G, gamma);
      for (ObjId a = 0; a < 3; ++a)
        for (int x = 0; x < static_cast<int>(r.source().carrierSize(a)); ++x)
          o.require(hat(r.eta(a, x)) == gamma.at(a, x), where + ": unit on a constant");
      for (auto &[s, t] : proved)
        o.require(hat(s) == hat(t), where + ": " + th.sig->show(s) + " ~ " + th.sig->show(t));
    }
  }
  o.require(gammas > 0, "no transformations");
  o.summary = std::to_string(gammas) + " transformations into y(2) and K3; " +
              std::to_string(samplesClosed.size()) + " sampled terms; " +
              std::to_string(proved.size()) + " proved pairs; one extension each";
  return o;
}

Outcome lambekPreservation() {
  Outcome o;
  auto rep = runCorpus("lambek-demo", "delta.cat");
  o.require(rep.exitCode() == 0, "lambek-demo delta.cat: " + firstFailure(rep));
  for (const char *check : {"phi-psi", "psi-phi-eta", "psi-natural", "round-trip"}) {
    auto *c = rep.find(std::string("lambek/sum/") + check);
    o.require(c && c->verdict == Verdict::Pass, std::string(check) + " missing or not passing");
  }
  auto *eta = rep.find("lambek/sum/psi-phi-eta");
  o.require(eta && eta->detail == "6 cases", "psi-phi-eta should cover 6 constants");
  auto *counts = rep.find("lambek/sum/counts");
  std::string expected = "n0: " + std::to_string(homCount(0, 2)) + ", n1: " +
                         std::to_string(homCount(1, 2)) + ", n2: " + std::to_string(homCount(2, 2));
  o.require(counts && counts->detail.find(expected) != std::string::npos,
            "per-object counts, expected " + expected);
  auto *rt = rep.find("lambek/sum/round-trip");
  o.summary = "counts " + expected + "; round trip on " + (rt ? rt->detail : "?") +
              " (terms up to size 6)";
  return o;
}

Outcome equalizers() {
  Outcome o;
  auto rep = runCorpus("eqlz-demo", "equalizer.cat");
  o.require(rep.exitCode() == 0, "eqlz-demo equalizer.cat: " + firstFailure(rep));
  auto *m = rep.find("eqlz/M/beta-eta");
  o.require(m && m->detail.rfind("rejected: ", 0) == 0 && m->detail.size() > 10,
            "mutant rejected with a witness");

  // Admission against msa::derives, one goal at a time.
  auto ws = cli::analyze(cli::parseDocument(readFile(corpusPath("equalizer.cat"))));
  auto P = ws.findFunctor("P");
  o.require(P.has_value(), "functor P");
  if (!P)
    return o;
  const auto &f = ws.functors()[*P];
  auto cat = ws.category(f.category);
  auto cones = ws.equalizerCones(f.category);
  const std::size_t S = 6;
  auto et = eqlz::buildEqualizerTheory(cat, {}, cones, f.functor, {S, 8, 100000});
  const auto &sig = et.sig();
  const auto &th = et.base();
  std::size_t compared = 0, admitted = 0;
  for (auto u : et.typable()) {
    if (u.sort() != th.sort(cat->cod(cones[0].e)) || u.size() + 1 > S)
      continue;
    ++compared;
    auto goal = msa::makeEquation(sig.apply(th.morphismSymbol(cones[0].f), {u}),
                                  sig.apply(th.morphismSymbol(cones[0].g), {u}));
    auto d = msa::derives(sig, et.axioms(), goal, {S, 100000});
    bool isProved = std::holds_alternative<msa::Proved>(d);
    bool isAdmitted = et.isTypable(sig.apply(et.eqlSymbol(0), {u}));
    admitted += isAdmitted;
    o.require(isProved == isAdmitted, sig.show(u) + ": oracle and fixpoint disagree");
  }
  o.require(et.fixpoint() && !et.truncated(), "fixpoint not reached");
  // beta/eta in P
  auto alg = eqlz::functorToPartialAlgebra(et, f.functor);
  for (const auto *eqs : {&et.betaInstances(), &et.etaAxioms()})
    for (const auto &eq : *eqs)
      o.require(msa::satisfies(alg, eq), msa::show(sig, eq) + " fails in P");
  o.summary = std::to_string(compared) + " terms of sort A checked against derives, " +
              std::to_string(admitted) + " admitted; " +
              std::to_string(et.betaInstances().size()) + " beta instances and eta hold in P; M " +
              (m ? m->detail : std::string("?"));
  return o;
}

// ---------------------------------------------------------------------------

std::string runTool(const std::string &cmdline) {
  std::string out;
  FILE *p = popen(cmdline.c_str(), "r");
  if (!p)
    return out;
  std::array<char, 4096> buf{};
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0)
    out.append(buf.data(), k);
  int status = pclose(p);
  out += "\nstatus " + std::to_string(status);
  return out;
}

Outcome determinism() {
  Outcome o;
  std::size_t runs = 0;
  for (const char *file : {"delta.cat", "product.cat", "equalizer.cat"})
    for (const auto &cmd : cli::commandNames())
      for (const char *seed : {"1", "7"}) {
        std::string line = std::string("'") + CATWB_TOOL_PATH + "' " + cmd + " '" +
                           corpusPath(file) + "' --format structured --seed " + seed +
                           " 2>&1";
        auto a = runTool(line), b = runTool(line);
        ++runs;
        o.require(a == b, cmd + " " + file + " seed " + seed + ": reports differ");
        o.require(a.find("status") != std::string::npos, "no output");
      }
  o.summary = std::to_string(runs) + " command runs repeated, structured output byte-identical";
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "category laws", categoryLaws},
      {2, "Yoneda lemma", yonedaLemma},
      {3, "coproduct counterexample", introCounterexample},
      {4, "functor/algebra correspondences", correspondences},
      {5, "engine vs oracle", engineVsOracle},
      {6, "adjunction", adjunction},
      {7, "Lambek preservation", lambekPreservation},
      {8, "equalizers", equalizers},
      {9, "determinism", determinism},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.ok = false;
      o.failures.push_back(std::string("threw: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.1fs", secs);
    std::cout << "criterion " << c.id << " " << (o.ok ? "PASS" : "FAIL") << " " << c.name << " ("
              << t << "): " << o.summary << "\n";
    for (const auto &f : o.failures)
      std::cout << "    " << f << "\n";
    failed += !o.ok;
  }
  std::cout << (9 - failed) << "/9 criteria pass\n";
  return failed == 0 ? 0 : 1;
}
