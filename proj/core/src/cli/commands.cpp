#include "catwb/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>

#include "catwb/completion/adjunction.hpp"
#include "catwb/eqlz/equalizer.hpp"
#include "catwb/lambek/embedding.hpp"
#include "catwb/msa/enumerate.hpp"
#include "catwb/msa/parse.hpp"

namespace catwb::cli {

using completion::EqResult;
using completion::ReflectedPresheaf;
using fincat::ConeCollection;
using fincat::FinFunctor;
using fincat::MorId;
using fincat::NatTrans;
using fincat::ObjId;
using msa::Term;

const std::vector<std::string> &commandNames() {
  static const std::vector<std::string> names = {
      "validate",         "yoneda-check", "counterexample", "build-theory", "normalize", "equal",
      "adjunction-check", "lambek-demo",  "eqlz-demo"};
  return names;
}

namespace {

std::string padded(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", k);
  return buf;
}

std::string andMore(const std::vector<std::string> &msgs) {
  std::string s = msgs.front();
  if (msgs.size() > 1)
    s += " (and " + std::to_string(msgs.size() - 1) + " more)";
  return s;
}

completion::EngineConfig engineConfig(const Flags &f) {
  completion::EngineConfig c;
  c.mode = f.engine;
  c.budget = f.budget();
  return c;
}

CheckRecord record(std::string id, bool ok, std::string witness, std::string detail = {}) {
  return {std::move(id), ok ? Verdict::Pass : Verdict::Fail, ok ? std::string() : std::move(witness),
          std::move(detail)};
}

// ---------------------------------------------------------------------------

void validate(const Workspace &ws, Report &rep) {
  for (const auto &name : ws.categoryNames()) {
    auto cat = ws.category(name);
    auto errs = fincat::validateCategory(*cat);
    std::vector<std::string> msgs;
    for (const auto &e : errs)
      msgs.push_back(e.message);
    rep.add(record("category/" + name, errs.empty(), errs.empty() ? "" : andMore(msgs),
                   std::to_string(cat->objectCount()) + " objects, " +
                       std::to_string(cat->morphismCount()) + " morphisms"));
  }
  for (const auto &c : ws.cones()) {
    auto cat = ws.category(c.category);
    std::string id = "cone/" + c.name;
    try {
      if (auto *p = std::get_if<fincat::ProductCone>(&c.cone)) {
        auto check = fincat::isProductCone(*cat, *p);
        rep.add(record(id, check.ok, check.ok ? "" : check.witness->message,
                       (p->nullary ? "terminal object on " : "product cone on ") + c.category));
      } else {
        auto check = eqlz::isEqualizer(*cat, std::get<eqlz::EqualizerCone>(c.cone));
        rep.add(record(id, check.ok, check.witness, "equalizer on " + c.category));
      }
    } catch (const std::exception &e) {
      rep.add(record(id, false, e.what()));
    }
  }
  for (const auto &f : ws.functors()) {
    auto errs = f.functor.validate();
    std::string detail;
    if (errs.empty()) {
      std::vector<std::string> kept, failed;
      for (const auto &c : ws.cones()) {
        if (c.category != f.category)
          continue;
        bool ok = false;
        if (auto *p = std::get_if<fincat::ProductCone>(&c.cone))
          ok = fincat::preservesCone(f.functor, *p).ok;
        else
          ok = eqlz::preservesEqualizer(f.functor, std::get<eqlz::EqualizerCone>(c.cone)).ok;
        (ok ? kept : failed).push_back(c.name);
      }
      auto join = [](const std::vector<std::string> &v) {
        std::string s;
        for (const auto &x : v)
          s += (s.empty() ? "" : ", ") + x;
        return s.empty() ? std::string("none") : s;
      };
      detail = "on " + f.category + "; preserves " + join(kept) + "; does not preserve " +
               join(failed);
    }
    rep.add(record("functor/" + f.functor.name(), errs.empty(), errs.empty() ? "" : andMore(errs),
                   detail));
  }
  for (const auto &n : ws.nats()) {
    auto v = fincat::naturalityViolation(ws.functors()[n.from].functor,
                                         ws.functors()[n.to].functor, n.alpha);
    rep.add(record("nat/" + n.name, !v, v.value_or("")));
  }
}

void yonedaCheck(const Workspace &ws, Report &rep) {
  if (ws.functors().empty())
    throw UsageError("yoneda-check needs at least one functor in the document");
  for (const auto &f : ws.functors()) {
    const FinFunctor &F = f.functor;
    auto cat = F.categoryPtr();
    for (ObjId a = 0; a < cat->objectCount(); ++a) {
      FinFunctor y = fincat::yoneda(cat, a);
      auto nats = fincat::enumerateNatTrans(y, F);
      std::string witness;
      if (nats.size() != F.carrierSize(a))
        witness = std::to_string(nats.size()) + " transformations but |" + F.name() + "(" +
                  cat->objectName(a) + ")| = " + std::to_string(F.carrierSize(a));
      for (std::size_t i = 0; i < nats.size() && witness.empty(); ++i) {
        int x = fincat::yonedaElement(*cat, nats[i], a);
        if (!(fincat::yonedaTransformation(F, a, x) == nats[i]))
          witness = "transformation " + std::to_string(i) + " is not determined by its element";
      }
      for (int x = 0; x < static_cast<int>(F.carrierSize(a)) && witness.empty(); ++x)
        if (fincat::yonedaElement(*cat, fincat::yonedaTransformation(F, a, x), a) != x)
          witness = "element " + F.elementName(a, x) + " does not come back";
      rep.add(record("yoneda/" + F.name() + "/" + cat->objectName(a), witness.empty(), witness,
                     std::to_string(nats.size()) + " transformations y(" + cat->objectName(a) +
                         ") -> " + F.name() + ", |" + F.name() + "(" + cat->objectName(a) +
                         ")| = " + std::to_string(F.carrierSize(a))));
    }
  }
}

// Base categories with cones declared on their opposite.
struct Embedding {
  std::string base;
  std::unique_ptr<lambek::EmbeddingContext> ctx;
};

std::vector<Embedding> embeddings(const Workspace &ws, Report &rep, const std::string &prefix) {
  std::vector<Embedding> out;
  for (const auto &name : ws.categoryNames()) {
    auto cones = ws.productCones("op(" + name + ")");
    if (cones.empty())
      continue;
    try {
      out.push_back({name, std::make_unique<lambek::EmbeddingContext>(ws.category(name), cones)});
    } catch (const std::exception &e) {
      rep.add(record(prefix + "/" + name + "/context", false, e.what()));
    }
  }
  return out;
}

void counterexample(const Workspace &ws, Report &rep) {
  std::size_t found = 0;
  for (const auto &emb : embeddings(ws, rep, "counterexample")) {
    const auto &ctx = *emb.ctx;
    for (const auto &cone : ctx.cones().cones()) {
      if (cone.nullary || cone.left != cone.right || ctx.coneFor(cone.left, cone.right) !=
                                                         ctx.cones().conesAt(cone.apex).front())
        continue;
      if (&ctx.cones()[*ctx.coneFor(cone.left, cone.right)] != &cone)
        continue;
      ++found;
      auto r = lambek::yonedaCounterexample(ctx, cone.left);
      std::string prefix = "counterexample/" + cone.name + "/";
      rep.add(record(prefix + "count", r.candidates.size() == r.yonedaCount,
                     std::to_string(r.candidates.size()) + " transformations, Yoneda count " +
                         std::to_string(r.yonedaCount),
                     r.summary));
      for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        const auto &c = r.candidates[i];
        rep.add(record(prefix + "candidate-" + std::to_string(i), !c.invertsCopairing,
                       "f . [y(inl), y(inr)] is the identity",
                       "f . [y(inl), y(inr)] moves " + c.witness));
      }
      rep.add(record(prefix + "no-inverse", r.counterexample,
                     "a transformation y(I+I) -> y(I)+y(I) inverts the copairing",
                     std::to_string(r.candidates.size()) + " candidates checked"));
    }
  }
  if (found == 0)
    throw UsageError("counterexample needs a cone I+I on op(C) in the document");
}

void lambekDemo(const Workspace &ws, Report &rep, const Flags &flags) {
  std::size_t found = 0;
  for (const auto &emb : embeddings(ws, rep, "lambek")) {
    const auto &ctx = *emb.ctx;
    for (std::size_t k = 0; k < ctx.cones().size(); ++k) {
      const auto &cone = ctx.cones()[k];
      if (cone.nullary)
        continue;
      ++found;
      lambek::ComparisonOptions opts;
      opts.roundTripSize = flags.budgetSize;
      opts.engine = engineConfig(flags);
      auto iso = lambek::comparisonIso(ctx, cone.left, cone.right, k, opts);
      std::string prefix = "lambek/" + cone.name + "/";
      for (const auto &c : iso.checks)
        rep.add({prefix + c.name, c.verdict, c.witness, std::to_string(c.cases) + " cases"});
      std::string counts, bad;
      for (const auto &p : iso.perObject) {
        std::string item = ctx.base().objectName(p.object) + ": " + std::to_string(p.count);
        counts += (counts.empty() ? "" : ", ") + item;
        if (!p.bijective)
          bad += (bad.empty() ? "" : ", ") + ctx.base().objectName(p.object);
      }
      rep.add(record(prefix + "counts", bad.empty(), "not a bijection at " + bad,
                     "|Hom(X, " + ctx.base().objectName(cone.apex) + ")| per object: " + counts));
    }
  }
  if (found == 0)
    throw UsageError("lambek-demo needs a binary cone on op(C) in the document");
}

void buildTheory(const Workspace &ws, Report &rep, const Flags &flags) {
  for (const auto &name : ws.categoryNames()) {
    auto th = theories::theoryOfCategory(ws.category(name));
    rep.add(record("theory/" + name, true, "", th.listing()));
  }
  std::vector<std::string> refs;
  for (const auto &c : ws.cones())
    if (std::find(refs.begin(), refs.end(), c.category) == refs.end())
      refs.push_back(c.category);
  for (const auto &ref : refs) {
    auto cones = ws.productCones(ref);
    if (cones.empty())
      continue;
    try {
      auto th = theories::theoryWithCones(ws.category(ref), cones);
      rep.add(record("theory/" + ref + "/cones", true, "", th.listing()));
    } catch (const theories::InvalidCone &e) {
      rep.add(record("theory/" + ref + "/cones", false, e.what()));
    }
  }
  for (const auto &f : ws.functors()) {
    auto cat = ws.category(f.category);
    auto cones = ws.productCones(f.category);
    std::string id = "theory/" + f.functor.name();
    try {
      auto th = theories::theoryOfFunctor(cat, cones, f.functor);
      rep.add(record(id, true, "", th.listing()));
      auto eqs = ws.equalizerCones(f.category);
      if (eqs.empty())
        continue;
      auto et = eqlz::buildEqualizerTheory(cat, cones, eqs, f.functor,
                                           {flags.budgetSize, 8, flags.budgetIters});
      Verdict v = et.fixpoint() && !et.truncated() ? Verdict::Pass : Verdict::Unknown;
      rep.add({id + "/equalizer", v, "", et.describeTranscript() + et.base().listing()});
    } catch (const std::exception &e) {
      rep.add(record(id, false, e.what()));
    }
  }
}

// ---------------------------------------------------------------------------

struct Item {
  std::string id;
  QueryDecl::Item::Kind kind;
  std::vector<std::string> terms;
  std::size_t functor;
  bool fromArgs;
};

std::vector<Item> collectItems(const Workspace &ws, const std::string &command,
                               const std::vector<std::string> &args) {
  auto kind = command == "normalize" ? QueryDecl::Item::Kind::Normalize
                                     : QueryDecl::Item::Kind::Equal;
  std::size_t want = kind == QueryDecl::Item::Kind::Normalize ? 1 : 2;
  std::vector<Item> out;
  if (!args.empty()) {
    if (args.size() != want)
      throw UsageError(command + " takes " + std::to_string(want) + " TERM operand" +
                       (want == 1 ? "" : "s"));
    if (ws.functors().empty())
      throw UsageError(command + " needs a functor in the document");
    out.push_back({command + "/" + padded(1), kind, args, 0, true});
    return out;
  }
  for (const auto &q : ws.queries()) {
    std::size_t k = 0;
    for (const auto &item : q.items) {
      ++k;
      if (item.kind == kind)
        out.push_back({command + "/" + q.name + "/" + padded(k), kind, item.terms, q.functor, false});
    }
  }
  if (out.empty())
    throw UsageError(command + " needs TERM operands or a query block with " + command + " items");
  return out;
}

// One theory per subject functor, built on first use.
class Subjects {
public:
  Subjects(const Workspace &ws, const Flags &flags) : ws_(ws), flags_(flags) {}

  bool hasEqualizers(std::size_t i) const {
    return !ws_.equalizerCones(ws_.functors()[i].category).empty();
  }

  ReflectedPresheaf &reflected(std::size_t i) {
    auto &slot = reflected_[i];
    if (!slot) {
      const auto &f = ws_.functors()[i];
      auto cones = ws_.productCones(f.category);
      auto cfg = engineConfig(flags_);
      for (const auto &n : ws_.nats())
        if (n.from == i && fincat::preservesCones(ws_.functors()[n.to].functor, cones))
          cfg.models.push_back({ws_.functors()[n.to].functor.name() + "/" + n.name,
                                ws_.functors()[n.to].functor, n.alpha});
      slot = std::make_unique<ReflectedPresheaf>(ws_.category(f.category), cones, f.functor, cfg);
    }
    return *slot;
  }

  eqlz::EssentialTheory &essential(std::size_t i) {
    auto &slot = essential_[i];
    if (!slot) {
      const auto &f = ws_.functors()[i];
      slot = std::make_unique<eqlz::EssentialTheory>(eqlz::buildEqualizerTheory(
          ws_.category(f.category), ws_.productCones(f.category), ws_.equalizerCones(f.category),
          f.functor, {flags_.budgetSize, 8, flags_.budgetIters}));
    }
    return *slot;
  }

private:
  const Workspace &ws_;
  const Flags &flags_;
  std::map<std::size_t, std::unique_ptr<ReflectedPresheaf>> reflected_;
  std::map<std::size_t, std::unique_ptr<eqlz::EssentialTheory>> essential_;
};

struct BadTerm {
  std::string message;
};

Term parseOperand(const msa::Signature &sig, const std::string &text, std::size_t which) {
  try {
    return msa::parseTerm(sig, text);
  } catch (const msa::ParseError &e) {
    throw BadTerm{"term " + std::to_string(which) + ", column " + std::to_string(e.column()) +
                  ": " + e.what()};
  } catch (const msa::IllSorted &e) {
    throw BadTerm{"term " + std::to_string(which) + ": " + e.what()};
  }
}

CheckRecord fromEqResult(const std::string &id, const EqResult &r) {
  std::string detail = "lhs: " + r.lhsNormal + "\nrhs: " + r.rhsNormal +
                       "\nengine: " + completion::modeName(r.engine);
  if (!r.note.empty())
    detail += "\nnote: " + r.note;
  switch (r.kind) {
  case EqResult::Kind::Equal:
    return {id, Verdict::Pass, "", detail};
  case EqResult::Kind::Distinct: {
    const auto &s = *r.separator;
    return {id, Verdict::Fail,
            "distinct: " + s.model->name + " (stage " + s.source + ") sends them to " + s.lhsName +
                " and " + s.rhsName,
            detail};
  }
  case EqResult::Kind::Unknown:
    break;
  }
  return {id, Verdict::Unknown, "", detail + "\n" + r.budget.describe()};
}

CheckRecord runReflected(Subjects &subs, const Item &item) {
  ReflectedPresheaf &r = subs.reflected(item.functor);
  const auto &sig = *r.theory().sig;
  Term s = parseOperand(sig, item.terms[0], 1);
  if (item.kind == QueryDecl::Item::Kind::Normalize) {
    auto res = r.equal(s, s);
    std::string detail = "normal form: " + res.lhsNormal + "\nengine: " +
                         completion::modeName(res.engine);
    if (!res.note.empty())
      detail += "\nnote: " + res.note;
    return {item.id, Verdict::Pass, "", detail};
  }
  Term t = parseOperand(sig, item.terms[1], 2);
  if (s.sort() != t.sort())
    throw BadTerm{"the terms have sorts " + sig.sortName(s.sort()) + " and " +
                  sig.sortName(t.sort())};
  return fromEqResult(item.id, r.equal(s, t));
}

// The first universe member equivalent to t: the smallest, as the universe
// is enumerated by size.
std::optional<Term> smallestEquivalent(const eqlz::EssentialTheory &et, Term t) {
  if (!et.isTypable(t))
    return std::nullopt;
  for (Term u : et.typable())
    if (et.derivable(u, t))
      return u;
  return t;
}

CheckRecord runEssential(Subjects &subs, const Workspace &ws, const Item &item) {
  auto &et = subs.essential(item.functor);
  const auto &sig = et.sig();
  std::string bound = "size " + std::to_string(et.bounds().maxTermSize);
  Term s = parseOperand(sig, item.terms[0], 1);
  auto ns = smallestEquivalent(et, s);
  if (item.kind == QueryDecl::Item::Kind::Normalize) {
    if (!ns)
      return {item.id, Verdict::Unknown, "",
              sig.show(s) + " is not typable within " + bound + " (some eql guard is not derived)"};
    return {item.id, Verdict::Pass, "", "normal form: " + sig.show(*ns) + "\nengine: saturation"};
  }
  Term t = parseOperand(sig, item.terms[1], 2);
  if (s.sort() != t.sort())
    throw BadTerm{"the terms have sorts " + sig.sortName(s.sort()) + " and " +
                  sig.sortName(t.sort())};
  auto nt = smallestEquivalent(et, t);
  std::string detail = "lhs: " + (ns ? sig.show(*ns) : "not typable within " + bound) +
                       "\nrhs: " + (nt ? sig.show(*nt) : "not typable within " + bound) +
                       "\nengine: saturation";
  if (ns && nt && et.derivable(s, t))
    return {item.id, Verdict::Pass, "", detail};
  // F itself separates when it is a model.
  const auto &f = ws.functors()[item.functor];
  bool model = static_cast<bool>(fincat::preservesCones(f.functor, ws.productCones(f.category)));
  for (const auto &c : et.cones())
    model = model && eqlz::preservesEqualizer(f.functor, c).ok;
  if (ns && nt && model) {
    auto alg = eqlz::functorToPartialAlgebra(et, f.functor);
    auto a = alg.evaluate(s, {}), b = alg.evaluate(t, {});
    if (a && b && *a != *b)
      return {item.id, Verdict::Fail,
              "distinct: " + f.functor.name() + " sends them to " +
                  alg.elementName(s.sort(), static_cast<std::size_t>(*a)) + " and " +
                  alg.elementName(t.sort(), static_cast<std::size_t>(*b)),
              detail};
  }
  return {item.id, Verdict::Unknown, "", detail};
}

void normalizeOrEqual(const Workspace &ws, Report &rep, const std::string &command,
                      const std::vector<std::string> &args, const Flags &flags) {
  auto items = collectItems(ws, command, args);
  Subjects subs(ws, flags);
  for (const auto &item : items) {
    try {
      if (subs.hasEqualizers(item.functor))
        rep.add(runEssential(subs, ws, item));
      else
        rep.add(runReflected(subs, item));
    } catch (const BadTerm &e) {
      if (item.fromArgs)
        throw UsageError(e.message);
      rep.add(record(item.id, false, e.message));
    }
  }
}

// ---------------------------------------------------------------------------

void adjunctionCheck(const Workspace &ws, Report &rep, const Flags &flags) {
  std::optional<std::size_t> subject;
  for (std::size_t i = 0; i < ws.functors().size() && !subject; ++i)
    if (!ws.productCones(ws.functors()[i].category).empty())
      subject = i;
  if (!subject)
    throw UsageError("adjunction-check needs a functor on a category with product cones");
  const auto &F = ws.functors()[*subject];
  auto cat = ws.category(F.category);
  auto cones = ws.productCones(F.category);
  ReflectedPresheaf r(cat, cones, F.functor, engineConfig(flags));

  struct Target {
    FinFunctor g;
    std::vector<std::pair<std::string, NatTrans>> gammas;
  };
  std::vector<Target> targets;
  for (std::size_t i = 0; i < ws.functors().size(); ++i) {
    const auto &G = ws.functors()[i];
    if (i == *subject || G.category != F.category || !fincat::preservesCones(G.functor, cones))
      continue;
    Target t{G.functor, {}};
    for (const auto &n : ws.nats())
      if (n.from == *subject && n.to == i)
        t.gammas.emplace_back(n.name, n.alpha);
    targets.push_back(std::move(t));
  }
  if (targets.empty())
    for (ObjId a = 0; a < cat->objectCount(); ++a) {
      FinFunctor y = fincat::yoneda(cat, a);
      y.setName("y(" + cat->objectName(a) + ")");
      targets.push_back({std::move(y), {}});
    }
  for (auto &t : targets)
    if (t.gammas.empty()) {
      auto all = fincat::enumerateNatTrans(F.functor, t.g, 8);
      for (std::size_t k = 0; k < all.size(); ++k)
        t.gammas.emplace_back("#" + std::to_string(k), all[k]);
    }

  auto samples = completion::closeSamples(
      r, completion::sampleTerms(r, 40, flags.budgetSize, flags.seed));
  msa::BoundedCongruence oracle(*r.theory().sig, r.theory().equations, flags.budget());
  std::vector<std::pair<Term, Term>> proved;
  for (const auto &cls : oracle.classes())
    for (std::size_t k = 1; k < cls.size() && proved.size() < 200; ++k)
      proved.emplace_back(cls.front(), cls[k]);

  for (const auto &t : targets) {
    for (const auto &[gname, gamma] : t.gammas) {
      std::string prefix = "adjunction/" + t.g.name() + "/" + gname + "/";
      auto up = completion::checkUniversalProperty(r, t.g, gamma, samples);
      rep.add(record(prefix + "unit", up.unitLaw, up.unitWitness, "all constants"));
      rep.add(record(prefix + "naturality", up.naturality, up.naturalityWitness,
                     std::to_string(up.samples) + " sampled terms x all morphisms"));
      CheckRecord uniq = record(prefix + "uniqueness", up.uniqueness, up.uniquenessWitness,
                                std::to_string(up.classes) + " classes, " +
                                    std::to_string(up.constraints) + " constraints, " +
                                    std::to_string(up.solutions) + " solutions");
      if (up.uniqueness && up.searchExhausted)
        uniq.verdict = Verdict::Unknown;
      rep.add(uniq);
      completion::GammaHat hat(r.theory(), t.g, gamma);
      std::string witness;
      for (const auto &[a, b] : proved)
        if (hat(a) != hat(b)) {
          witness = r.theory().sig->show(a) + " ≈ " + r.theory().sig->show(b) + " but " +
                    hat.show(a) + " != " + hat.show(b);
          break;
        }
      rep.add(record(prefix + "well-defined", witness.empty(), witness,
                     std::to_string(proved.size()) + " proved pairs; " +
                         oracle.report().describe()));
    }
  }
}

// ---------------------------------------------------------------------------

void eqlzDemo(const Workspace &ws, Report &rep, const Flags &flags) {
  std::size_t found = 0;
  for (const auto &f : ws.functors()) {
    auto eqs = ws.equalizerCones(f.category);
    if (eqs.empty())
      continue;
    ++found;
    const FinFunctor &F = f.functor;
    std::string prefix = "eqlz/" + F.name() + "/";
    auto et = eqlz::buildEqualizerTheory(ws.category(f.category), ws.productCones(f.category), eqs,
                                         F, {flags.budgetSize, 8, flags.budgetIters});
    const auto &sig = et.sig();
    const auto &th = et.base();

    Verdict fix = et.fixpoint() && !et.truncated() ? Verdict::Pass : Verdict::Unknown;
    rep.add({prefix + "fixpoint", fix, "", et.describeTranscript()});
    rep.add(record(prefix + "monotone", et.monotone(), "a round lost a term or an equation"));

    std::string guardWitness;
    const auto &c0 = et.cones();
    for (std::size_t i = 0; i < et.admitted().size() && guardWitness.empty(); ++i) {
      Term q = et.admitted()[i];
      std::size_t k = 0;
      while (et.eqlSymbol(k) != q.symbol())
        ++k;
      Term arg = q.args()[0];
      auto goal = msa::makeEquation(sig.apply(th.morphismSymbol(c0[k].f), {arg}),
                                    sig.apply(th.morphismSymbol(c0[k].g), {arg}));
      if (auto err = msa::checkTrace(sig, et.axioms(), et.guard(i), goal))
        guardWitness = sig.show(q) + ": " + *err;
    }
    rep.add(record(prefix + "guards", guardWitness.empty(), guardWitness,
                   std::to_string(et.admitted().size()) + " admitted eql terms, each with a replayed "
                                                          "derivation of its guard"));

    // The oracle closes the unguarded universe of the same size.
    msa::BoundedCongruence oracle(sig, et.axioms(), {flags.budgetSize, flags.budgetIters});
    std::string admitWitness;
    std::size_t compared = 0;
    for (Term u : et.typable()) {
      for (std::size_t k = 0; k < c0.size() && admitWitness.empty(); ++k) {
        if (u.sort() != th.sort(ws.category(f.category)->cod(c0[k].e)) ||
            u.size() + 1 > flags.budgetSize)
          continue;
        ++compared;
        Term fu = sig.apply(th.morphismSymbol(c0[k].f), {u});
        Term gu = sig.apply(th.morphismSymbol(c0[k].g), {u});
        bool proved = oracle.equivalent(fu, gu);
        bool admitted = et.isTypable(sig.apply(et.eqlSymbol(k), {u}));
        if (proved != admitted)
          admitWitness = sig.show(u) + ": oracle " + (proved ? "proves" : "does not prove") +
                         " the guard, fixpoint " + (admitted ? "admits" : "does not admit");
      }
    }
    CheckRecord adm = record(prefix + "admission", admitWitness.empty(), admitWitness,
                             std::to_string(compared) + " terms compared; " +
                                 oracle.report().describe());
    if (!admitWitness.empty() && (oracle.report().exhausted || et.truncated()))
      adm.verdict = Verdict::Unknown;
    rep.add(adm);

    auto corr = eqlz::correspondenceEq(et, F);
    rep.add(record(prefix + "correspondence", corr.agree() && corr.roundTrip,
                   corr.agree() ? "algebra -> functor does not give back " + F.name()
                                : "preservation and the partial algebra check disagree: " +
                                      corr.witness,
                   std::string("preserves the equalizers: ") + (corr.preserves ? "yes" : "no") +
                       "; partial algebra: " + (corr.algebraPasses ? "passes" : "fails") +
                       (corr.witness.empty() ? "" : "\n" + corr.witness)));

    auto alg = eqlz::functorToPartialAlgebra(et, F);
    if (corr.preserves) {
      std::string w;
      for (const auto *eqs2 : {&et.betaInstances(), &et.etaAxioms()})
        for (const auto &eq : *eqs2)
          if (w.empty() && !msa::satisfies(alg, eq))
            w = msa::show(sig, eq) + " fails in " + F.name();
      if (w.empty())
        if (auto v = eqlz::classViolation(et, F))
          w = *v;
      rep.add(record(prefix + "beta-eta", w.empty(), w,
                     std::to_string(et.betaInstances().size()) + " beta instances and " +
                         std::to_string(et.etaAxioms().size()) + " eta axioms hold in " +
                         F.name()));
    } else {
      std::string w;
      for (std::size_t k = 0; k < c0.size() && w.empty(); ++k)
        if (auto ch = eqlz::partialAlgebraCheck(et, alg, k); !ch)
          w = ch.witness;
      rep.add(record(prefix + "beta-eta", !w.empty(),
                     F.name() + " does not preserve an equalizer yet its partial algebra passes",
                     "rejected: " + w));
    }
  }
  if (found == 0)
    throw UsageError("eqlz-demo needs a functor on a category with an equalizer cone");
}

} // namespace

Report run(const std::string &command, const Workspace &ws, const std::vector<std::string> &args,
           const Flags &flags, const std::string &source) {
  const auto &names = commandNames();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw UsageError("unknown command " + command);
  if (!args.empty() && command != "normalize" && command != "equal")
    throw UsageError(command + " takes no operands");
  Report rep(command, source, flags);
  if (command == "validate")
    validate(ws, rep);
  else if (command == "yoneda-check")
    yonedaCheck(ws, rep);
  else if (command == "counterexample")
    counterexample(ws, rep);
  else if (command == "build-theory")
    buildTheory(ws, rep, flags);
  else if (command == "normalize" || command == "equal")
    normalizeOrEqual(ws, rep, command, args, flags);
  else if (command == "adjunction-check")
    adjunctionCheck(ws, rep, flags);
  else if (command == "lambek-demo")
    lambekDemo(ws, rep, flags);
  else
    eqlzDemo(ws, rep, flags);
  rep.canonicalize();
  return rep;
}

Report runSource(const std::string &command, std::string_view text, const std::string &source,
                 const std::vector<std::string> &args, const Flags &flags) {
  const auto &names = commandNames();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw UsageError("unknown command " + command);
  try {
    Workspace ws = analyze(parseDocument(text));
    return run(command, ws, args, flags, source);
  } catch (const DslError &e) {
    Report rep(command, source, flags);
    std::string all;
    for (const auto &d : e.diagnostics())
      all += (all.empty() ? "" : "\n") + source + ":" + d.str();
    rep.add({"parse", Verdict::Fail, e.diagnostics().front().str(), all});
    return rep;
  }
}

} // namespace catwb::cli
