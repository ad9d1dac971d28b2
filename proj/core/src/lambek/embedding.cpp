#include "catwb/lambek/embedding.hpp"

#include <sstream>

#include "catwb/msa/enumerate.hpp"

namespace catwb::lambek {

using completion::EqResult;
using msa::Term;

EmbeddingContext::EmbeddingContext(std::shared_ptr<const FinCategory> base, ConeCollection cones)
    : base_(std::move(base)), cones_(std::move(cones)) {
  if (auto errs = fincat::validateCategory(*base_); !errs.empty())
    throw std::invalid_argument("base category is invalid: " + errs.front().message);
  op_ = std::make_shared<const FinCategory>(fincat::opposite(*base_));
  for (const auto &c : cones_.cones())
    if (auto check = fincat::isProductCone(*op_, c); !check)
      throw theories::InvalidCone(c.name, check.witness->message);
}

std::optional<std::size_t> EmbeddingContext::coneFor(ObjId a, ObjId b) const {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (!cones_[i].nullary && cones_[i].left == a && cones_[i].right == b)
      return i;
  return std::nullopt;
}

FinFunctor EmbeddingContext::y(ObjId a) const {
  FinFunctor f = fincat::yoneda(op_, a);
  f.setName("y(" + base_->objectName(a) + ")");
  return f;
}

// ---------------------------------------------------------------------------

CounterexampleReport yonedaCounterexample(const EmbeddingContext &ctx, ObjId i) {
  auto k = ctx.coneFor(i, i);
  if (!k)
    throw std::invalid_argument("no chosen coproduct " + ctx.base().objectName(i) + "+" +
                                ctx.base().objectName(i));
  const auto &cone = ctx.cones()[*k];
  FinFunctor yi = ctx.y(i);
  auto cp = fincat::coproductPresheaf(yi, yi);
  NatTrans c = fincat::copair(cp, fincat::yonedaMap(*ctx.op(), cone.fst),
                              fincat::yonedaMap(*ctx.op(), cone.snd));
  return yonedaCounterexample(ctx, i, c);
}

CounterexampleReport yonedaCounterexample(const EmbeddingContext &ctx, ObjId i,
                                          const NatTrans &copairing) {
  auto k = ctx.coneFor(i, i);
  if (!k)
    throw std::invalid_argument("no chosen coproduct " + ctx.base().objectName(i) + "+" +
                                ctx.base().objectName(i));
  const FinCategory &base = ctx.base();
  CounterexampleReport rep;
  rep.object = i;
  rep.sum = ctx.cones()[*k].apex;
  FinFunctor yi = ctx.y(i);
  FinFunctor ys = ctx.y(rep.sum);
  auto cp = fincat::coproductPresheaf(yi, yi);
  if (auto v = fincat::naturalityViolation(cp.sum, ys, copairing))
    throw std::invalid_argument("copairing is not a transformation y(I)+y(I) -> y(I+I): " + *v);
  rep.yonedaCount = cp.sum.carrierSize(rep.sum);
  NatTrans id = fincat::identityNat(cp.sum);
  for (auto &f : fincat::enumerateNatTrans(ys, cp.sum)) {
    CounterexampleCandidate cand;
    NatTrans fc = fincat::composeNat(f, copairing);
    cand.invertsCopairing = fc == id;
    for (ObjId x = 0; x < base.objectCount() && cand.witness.empty(); ++x)
      for (int e = 0; e < static_cast<int>(cp.sum.carrierSize(x)); ++e)
        if (fc.at(x, e) != e) {
          cand.witness = base.objectName(x) + ": " + cp.sum.elementName(x, e) + " -> " +
                         cp.sum.elementName(x, fc.at(x, e));
          break;
        }
    cand.f = std::move(f);
    rep.candidates.push_back(std::move(cand));
  }
  std::size_t inverting = 0;
  for (const auto &c : rep.candidates)
    inverting += c.invertsCopairing;
  rep.counterexample = inverting == 0;
  std::ostringstream s;
  s << rep.candidates.size() << " transformations y(" << base.objectName(rep.sum) << ") -> y("
    << base.objectName(i) << ")+y(" << base.objectName(i) << "), Yoneda count "
    << rep.yonedaCount << "; ";
  if (rep.counterexample)
    s << "none inverts [y(inl), y(inr)]";
  else
    s << inverting << " invert [y(inl), y(inr)]: no counterexample here";
  rep.summary = s.str();
  return rep;
}

// ---------------------------------------------------------------------------

void requireConePreserving(const EmbeddingContext &ctx, const FinFunctor &f) {
  if (auto r = fincat::preservesCones(f, ctx.cones()); !r)
    throw completion::NotConePreserving(f.name() + " does not preserve the chosen cones: " +
                                        r.witness);
}

LambekImage lambekEmbed(const EmbeddingContext &ctx, ObjId a) {
  LambekImage img{ctx.y(a), ""};
  requireConePreserving(ctx, img.functor);
  img.note = img.functor.name() + " preserves the " + std::to_string(ctx.cones().size()) +
             " chosen cones; it lies in the subcategory as it is";
  return img;
}

msa::Term SubcategoryCoproduct::inl(ObjId x, int m) const {
  return reflected->eta(x, presheaf.inl.at(x, m));
}

msa::Term SubcategoryCoproduct::inr(ObjId x, int m) const {
  return reflected->eta(x, presheaf.inr.at(x, m));
}

SubcategoryCoproduct subcategoryCoproduct(const EmbeddingContext &ctx, ObjId a, ObjId b,
                                          completion::EngineConfig config) {
  auto cp = fincat::coproductPresheaf(ctx.y(a), ctx.y(b));
  cp.sum.setName("y(" + ctx.base().objectName(a) + ")+y(" + ctx.base().objectName(b) + ")");
  auto r = std::make_shared<ReflectedPresheaf>(ctx.op(), ctx.cones(), cp.sum, std::move(config));
  return {std::move(cp), std::move(r)};
}

// ---------------------------------------------------------------------------

Verdict ComparisonIso::verdict() const {
  Verdict v = Verdict::Pass;
  for (const auto &c : checks)
    v = worst(v, c.verdict);
  return v;
}

std::string ComparisonIso::describe() const {
  std::ostringstream out;
  for (const auto &c : checks) {
    out << c.name << ": " << verdictName(c.verdict) << " (" << c.cases << " cases)";
    if (!c.witness.empty())
      out << " " << c.witness;
    out << "\n";
  }
  out << "counts:";
  for (const auto &p : perObject)
    out << " " << p.count << (p.bijective ? "" : "!");
  out << "\n";
  return out.str();
}

namespace {

void record(IsoCheck &check, const EqResult &r, const std::string &what) {
  ++check.cases;
  if (r.kind == EqResult::Kind::Equal)
    return;
  Verdict v = r.kind == EqResult::Kind::Distinct ? Verdict::Fail : Verdict::Unknown;
  if (worst(check.verdict, v) != check.verdict) {
    check.verdict = worst(check.verdict, v);
    check.witness = what + " (" + r.lhsNormal + " vs " + r.rhsNormal + ")";
  }
}

} // namespace

ComparisonIso comparisonIso(const EmbeddingContext &ctx, ObjId a, ObjId b, std::size_t coneIdx,
                            const ComparisonOptions &options) {
  const auto &cone = ctx.cones().cones().at(coneIdx);
  if (cone.nullary || cone.left != a || cone.right != b)
    throw std::invalid_argument("cone " + cone.name + " is not a coproduct of the given objects");
  const FinCategory &op = *ctx.op();
  ComparisonIso out;
  out.a = a;
  out.b = b;
  out.sum = cone.apex;

  auto sub = subcategoryCoproduct(ctx, a, b, options.engine);
  const ReflectedPresheaf &L = *sub.reflected;
  const auto &th = L.theory();
  const auto &cp = sub.presheaf;
  FinFunctor ys = ctx.y(cone.apex);
  NatTrans gamma = options.gamma ? *options.gamma
                                 : fincat::copair(cp, fincat::yonedaMap(op, cone.fst),
                                                  fincat::yonedaMap(op, cone.snd));

  IsoCheck gammaNatural{"gamma-natural", Verdict::Pass, 0, {}};
  for (ObjId x = 0; x < op.objectCount(); ++x)
    gammaNatural.cases += cp.sum.carrierSize(x);
  if (auto v = fincat::naturalityViolation(cp.sum, ys, gamma)) {
    gammaNatural.verdict = Verdict::Fail;
    gammaNatural.witness = *v;
  }
  completion::GammaHat phi(th, ys, gamma, /*requireNatural=*/false);

  auto idIndex = [&](ObjId x) {
    return *fincat::yoneda(ctx.op(), x).findElement(x, op.morphismName(op.identity(x)));
  };
  Term generic = th.sig->apply(*th.coneSymbols[coneIdx],
                               {sub.inl(a, idIndex(a)), sub.inr(b, idIndex(b))});
  auto psi = [&](ObjId x, int e) { return L.act(op.hom(cone.apex, x).at(e), generic); };

  IsoCheck psiNatural{"psi-natural", Verdict::Pass, 0, {}};
  for (MorId m = 0; m < op.morphismCount(); ++m) {
    ObjId x = op.dom(m), y = op.cod(m);
    for (int e = 0; e < static_cast<int>(ys.carrierSize(x)); ++e)
      record(psiNatural, L.equal(psi(y, ys.apply(m, e)), L.act(m, psi(x, e))),
             op.morphismName(m) + " at " + ys.elementName(x, e));
  }

  IsoCheck phiPsi{"phi-psi", Verdict::Pass, 0, {}};
  std::vector<bool> objectOk(op.objectCount(), true);
  for (ObjId x = 0; x < op.objectCount(); ++x) {
    for (int e = 0; e < static_cast<int>(ys.carrierSize(x)); ++e) {
      ++phiPsi.cases;
      int back = phi(psi(x, e));
      if (back == e)
        continue;
      objectOk[x] = false;
      if (phiPsi.verdict == Verdict::Pass) {
        phiPsi.verdict = Verdict::Fail;
        phiPsi.witness = op.objectName(x) + ": " + ys.elementName(x, e) + " -> " +
                         ys.elementName(x, back);
      }
    }
  }

  auto sortOk = [&](Term t, const EqResult &r) {
    if (r.kind != EqResult::Kind::Equal)
      objectOk[t.sort().value] = false;
  };
  IsoCheck psiPhiEta{"psi-phi-eta", Verdict::Pass, 0, {}};
  for (ObjId x = 0; x < op.objectCount(); ++x) {
    for (int c = 0; c < static_cast<int>(cp.sum.carrierSize(x)); ++c) {
      Term t = L.eta(x, c);
      auto r = L.equal(psi(x, phi(t)), t);
      sortOk(t, r);
      record(psiPhiEta, r, th.sig->show(t));
    }
  }

  IsoCheck roundTrip{"round-trip", Verdict::Pass, 0, {}};
  msa::TermLayers layers(*th.sig, options.roundTripSize);
  for (Term t : layers.all()) {
    auto r = L.equal(psi(t.sort().value, phi(t)), t);
    sortOk(t, r);
    record(roundTrip, r, th.sig->show(t));
  }
  out.roundTripTerms = roundTrip.cases;

  for (ObjId x = 0; x < op.objectCount(); ++x)
    out.perObject.push_back({x, ys.carrierSize(x), objectOk[x]});
  out.checks = {gammaNatural, psiNatural, phiPsi, psiPhiEta, roundTrip};
  return out;
}

} // namespace catwb::lambek
