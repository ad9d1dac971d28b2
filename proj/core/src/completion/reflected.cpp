#include "catwb/completion/reflected.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "catwb/msa/enumerate.hpp"
#include "saturation.hpp"

namespace catwb::completion {

using msa::Term;
using theories::SymbolOrigin;
using VK = ValueNode::Kind;

const char *modeName(EngineMode m) { return m == EngineMode::Nbe ? "nbe" : "saturation"; }

const char *kindName(EqResult::Kind k) {
  switch (k) {
  case EqResult::Kind::Equal:
    return "equal";
  case EqResult::Kind::Distinct:
    return "distinct";
  case EqResult::Kind::Unknown:
    return "unknown";
  }
  return "?";
}

ReflectedPresheaf::ReflectedPresheaf(std::shared_ptr<const FinCategory> cat,
                                     ConeCollection cones, FinFunctor f, EngineConfig config)
    : theory_(theories::theoryOfFunctor(cat, cones, f)), config_(std::move(config)) {
  if (auto errs = f.validate(); !errs.empty())
    throw std::invalid_argument("functor " + f.name() + " is invalid: " + errs.front());
  prepareNbe();
}

ReflectedPresheaf::~ReflectedPresheaf() = default;

void ReflectedPresheaf::addModel(Model m) {
  std::lock_guard lock(mutex_);
  config_.models.push_back(std::move(m));
  candidates_.clear();
  candidateStage_ = 0;
}

Term ReflectedPresheaf::act(MorId f, Term t) const {
  return theory_.sig->apply(theory_.morphismSymbol(f), {t});
}

// ---------------------------------------------------------------------------
// Constant quotient and value store

void ReflectedPresheaf::prepareNbe() {
  const FinCategory &c = category();
  if (auto cyc = theory_.cones.apexCycle(c)) {
    nbeRefusal_ = "apex dependency cycle through " + c.objectName(*cyc);
    return;
  }
  if (!theory_.cones.oneConePerApex()) {
    nbeRefusal_ = "an object is the apex of more than one cone";
    return;
  }
  apexCone_.assign(c.objectCount(), std::nullopt);
  for (std::size_t i = 0; i < theory_.cones.size(); ++i)
    apexCone_[theory_.cones[i].apex] = i;
  offset_.assign(c.objectCount() + 1, 0);
  for (ObjId a = 0; a < c.objectCount(); ++a)
    offset_[a + 1] = offset_[a] + source().carrierSize(a);
  closeConstants();
  tupleConstant_.assign(c.objectCount(), {});
  for (ObjId a = 0; a < c.objectCount(); ++a) {
    if (!apexCone_[a])
      continue;
    for (int d = 0; d < static_cast<int>(source().carrierSize(a)); ++d)
      tupleConstant_[a].emplace(expandConstant(a, d).id, d);
  }
}

void ReflectedPresheaf::closeConstants() {
  const FinCategory &c = category();
  const FinFunctor &f = source();
  constRep_.resize(offset_.back());
  std::iota(constRep_.begin(), constRep_.end(), 0);
  std::function<int(int)> findRoot = [&](int i) {
    while (constRep_[i] != i)
      i = constRep_[i] = constRep_[constRep_[i]];
    return i;
  };
  auto idx = [&](ObjId a, int x) { return static_cast<int>(offset_[a]) + x; };
  bool changed = false;
  auto unite = [&](ObjId a, int x, int y) {
    int p = findRoot(idx(a, x)), q = findRoot(idx(a, y));
    if (p == q)
      return;
    if (q < p)
      std::swap(p, q);
    constRep_[q] = p;
    changed = true;
  };
  std::function<void(ObjId, int, std::vector<int> &)> leaves = [&](ObjId a, int d,
                                                                   std::vector<int> &out) {
    if (!apexCone_[a]) {
      out.push_back(findRoot(idx(a, d)));
      return;
    }
    const auto &cone = theory_.cones[*apexCone_[a]];
    if (cone.nullary)
      return;
    leaves(cone.left, f.apply(cone.fst, d), out);
    leaves(cone.right, f.apply(cone.snd, d), out);
  };
  do {
    changed = false;
    for (ObjId a = 0; a < c.objectCount(); ++a) {
      if (!apexCone_[a])
        continue;
      std::map<std::vector<int>, int> first;
      for (int d = 0; d < static_cast<int>(f.carrierSize(a)); ++d) {
        std::vector<int> sig;
        leaves(a, d, sig);
        auto [it, fresh] = first.emplace(sig, d);
        if (fresh)
          continue;
        for (ObjId b = 0; b < c.objectCount(); ++b) {
          if (apexCone_[b])
            continue;
          for (MorId h : c.hom(a, b))
            unite(b, f.apply(h, it->second), f.apply(h, d));
        }
      }
    }
    for (MorId m = 0; m < c.morphismCount(); ++m) {
      ObjId a = c.dom(m), b = c.cod(m);
      if (apexCone_[a] || apexCone_[b])
        continue;
      for (int x = 0; x < static_cast<int>(f.carrierSize(a)); ++x) {
        int r = findRoot(idx(a, x)) - static_cast<int>(offset_[a]);
        unite(b, f.apply(m, x), f.apply(m, r));
      }
    }
  } while (changed);
  for (std::size_t i = 0; i < constRep_.size(); ++i)
    constRep_[i] = findRoot(static_cast<int>(i));
}

int ReflectedPresheaf::rep(ObjId a, int x) const {
  return constRep_[offset_[a] + x] - static_cast<int>(offset_[a]);
}

Value ReflectedPresheaf::intern(const ValueNode &n) const {
  Key key{};
  switch (n.kind) {
  case VK::Pair:
    key = {0ULL | (std::uint64_t{n.cone} << 8), (std::uint64_t{n.left.id} << 32) | n.right.id};
    break;
  case VK::Unit:
    key = {1ULL | (std::uint64_t{n.cone} << 8), 0};
    break;
  case VK::Const:
    key = {2ULL | (std::uint64_t{n.sort} << 8),
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(n.element))};
    break;
  case VK::Stuck:
    key = {3ULL | (std::uint64_t{n.head} << 8), n.arg.id};
    break;
  }
  auto [it, fresh] = valueIndex_.emplace(key, static_cast<std::uint32_t>(values_.size()));
  if (fresh)
    values_.push_back(n);
  return Value{it->second};
}

ValueNode ReflectedPresheaf::node(Value v) const {
  std::lock_guard lock(mutex_);
  return values_.at(v.id);
}

Value ReflectedPresheaf::expandConstant(ObjId a, int x) const {
  if (!apexCone_[a]) {
    ValueNode n;
    n.kind = VK::Const;
    n.sort = a;
    n.element = rep(a, x);
    return intern(n);
  }
  std::size_t k = *apexCone_[a];
  const auto &cone = theory_.cones[k];
  ValueNode n;
  n.kind = cone.nullary ? VK::Unit : VK::Pair;
  n.sort = a;
  n.cone = static_cast<std::uint32_t>(k);
  if (!cone.nullary) {
    n.left = expandConstant(cone.left, source().apply(cone.fst, x));
    n.right = expandConstant(cone.right, source().apply(cone.snd, x));
  }
  return intern(n);
}

// ---------------------------------------------------------------------------
// Evaluation

Value ReflectedPresheaf::eval(Term t) const {
  if (auto it = evalMemo_.find(t); it != evalMemo_.end())
    return it->second;
  const auto &origin = theory_.origin(t.symbol());
  Value out;
  switch (origin.kind) {
  case SymbolOrigin::Kind::Constant:
    out = expandConstant(origin.object, origin.element);
    break;
  case SymbolOrigin::Kind::Pair: {
    ValueNode n;
    n.kind = VK::Pair;
    n.sort = theory_.cones[origin.index].apex;
    n.cone = origin.index;
    n.left = eval(t.args()[0]);
    n.right = eval(t.args()[1]);
    out = intern(n);
    break;
  }
  case SymbolOrigin::Kind::Unit: {
    ValueNode n;
    n.kind = VK::Unit;
    n.sort = theory_.cones[origin.index].apex;
    n.cone = origin.index;
    out = intern(n);
    break;
  }
  case SymbolOrigin::Kind::Morphism:
    out = apply(origin.index, eval(t.args()[0]));
    break;
  case SymbolOrigin::Kind::Eql:
    throw NoCanonicalForm("equalizer symbols have no canonical form");
  }
  evalMemo_.emplace(t, out);
  return out;
}

Value ReflectedPresheaf::apply(MorId h, Value v) const {
  Key key{h, v.id};
  if (auto it = applyMemo_.find(key); it != applyMemo_.end())
    return it->second;
  const FinCategory &c = category();
  ObjId b = c.cod(h);
  Value out;
  if (apexCone_[b]) {
    std::size_t k = *apexCone_[b];
    const auto &cone = theory_.cones[k];
    ValueNode n;
    n.kind = cone.nullary ? VK::Unit : VK::Pair;
    n.sort = b;
    n.cone = static_cast<std::uint32_t>(k);
    if (!cone.nullary) {
      n.left = apply(c.compose(cone.fst, h), v);
      n.right = apply(c.compose(cone.snd, h), v);
    }
    out = intern(n);
  } else {
    const ValueNode n = values_[v.id];
    switch (n.kind) {
    case VK::Const: {
      ValueNode r;
    r.kind = VK::Const;
      r.sort = b;
      r.element = rep(b, source().apply(h, n.element));
      out = intern(r);
      break;
    }
    case VK::Stuck:
      out = apply(c.compose(h, n.head), n.arg);
      break;
    case VK::Pair:
    case VK::Unit:
      out = applyToTuple(h, v);
      break;
    }
  }
  applyMemo_.emplace(key, out);
  return out;
}

// h : C -> B with C an apex and B not; v the eta-long value at C.
Value ReflectedPresheaf::applyToTuple(MorId h, Value v) const {
  const FinCategory &c = category();
  const FinFunctor &f = source();
  const ValueNode n = values_[v.id];
  const auto &cone = theory_.cones[n.cone];
  ObjId b = c.cod(h);
  std::vector<std::pair<Value, std::string>> routes;
  auto note = [&](Value r, std::string why) { routes.emplace_back(r, std::move(why)); };

  if (n.kind == VK::Pair) {
    for (MorId k : c.hom(cone.left, b))
      if (c.compose(k, cone.fst) == h)
        note(apply(k, n.left), "factor through " + c.morphismName(cone.fst));
    for (MorId k : c.hom(cone.right, b))
      if (c.compose(k, cone.snd) == h)
        note(apply(k, n.right), "factor through " + c.morphismName(cone.snd));
    // Sections: m(l) ≈ pair(l, (snd∘m)(l)) when fst∘m = id.
    for (MorId m : c.hom(cone.left, n.sort))
      if (c.isIdentity(c.compose(cone.fst, m)) && apply(c.compose(cone.snd, m), n.left) == n.right)
        note(apply(c.compose(h, m), n.left), "section " + c.morphismName(m));
    for (MorId m : c.hom(cone.right, n.sort))
      if (c.isIdentity(c.compose(cone.snd, m)) && apply(c.compose(cone.fst, m), n.right) == n.left)
        note(apply(c.compose(h, m), n.right), "section " + c.morphismName(m));
  }
  if (auto it = tupleConstant_[n.sort].find(v.id); it != tupleConstant_[n.sort].end()) {
    ValueNode r;
    r.kind = VK::Const;
    r.sort = b;
    r.element = rep(b, f.apply(h, it->second));
    note(intern(r), "constant " + f.elementName(n.sort, it->second));
  }
  if (routes.empty()) {
    ValueNode s;
    s.kind = VK::Stuck;
    s.sort = b;
    s.head = h;
    s.arg = v;
    return intern(s);
  }
  for (const auto &[r, why] : routes)
    if (!(r == routes.front().first))
      throw EngineIncoherent("routes for " + c.morphismName(h) + " disagree: " +
                             routes.front().second + " gives " +
                             theory_.sig->show(readback(routes.front().first)) + ", " + why +
                             " gives " + theory_.sig->show(readback(r)));
  return routes.front().first;
}

Value ReflectedPresheaf::normalize(Term t) const {
  if (nbeRefusal_)
    throw NoCanonicalForm(*nbeRefusal_);
  if (!msa::isClosed(t))
    throw std::invalid_argument("normalize expects a closed term");
  std::lock_guard lock(mutex_);
  return eval(t);
}

Term ReflectedPresheaf::readback(Value v) const {
  std::lock_guard lock(mutex_);
  const ValueNode n = values_.at(v.id);
  switch (n.kind) {
  case VK::Pair:
    return theory_.sig->apply(*theory_.coneSymbols[n.cone], {readback(n.left), readback(n.right)});
  case VK::Unit:
    return theory_.sig->constant(*theory_.coneSymbols[n.cone]);
  case VK::Const:
    return theory_.constant(n.sort, n.element);
  case VK::Stuck:
    return act(n.head, readback(n.arg));
  }
  return {};
}

CrossValidation ReflectedPresheaf::crossValidate(msa::Budget budget) {
  CrossValidation out;
  if (nbeRefusal_)
    return out;
  msa::TermLayers layers(*theory_.sig, budget.maxTermSize);
  auto all = layers.all();
  auto cc = msa::BoundedCongruence::overUniverse(*theory_.sig, theory_.equations, all,
                                                 budget.maxMerges);
  out.terms = all.size();
  out.oracle = cc.report();
  for (const auto &cls : cc.classes()) {
    ++out.classes;
    try {
      Value v = normalize(cls.front());
      for (Term t : cls) {
        if (normalize(t) == v)
          continue;
        if (out.violations++ == 0)
          out.witness = theory_.sig->show(cls.front()) + " and " + theory_.sig->show(t) +
                        " are provably equal but normalize to " + show(v) + " and " +
                        show(normalize(t));
      }
    } catch (const EngineIncoherent &e) {
      if (out.violations++ == 0)
        out.witness = e.what();
    }
  }
  if (out.violations > 0) {
    config_.mode = EngineMode::Saturation;
    out.downgraded = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Separators

std::size_t ReflectedPresheaf::candidateCount() const {
  std::lock_guard lock(mutex_);
  buildCandidates(4);
  return candidates_.size();
}

void ReflectedPresheaf::buildCandidates(int stage) const {
  const auto cat = theory_.category;
  const FinFunctor &f = source();
  auto push = [&](FinFunctor g, NatTrans gamma, std::string source) {
    try {
      auto model = std::make_shared<const Model>(Model{g.name(), g, gamma});
      auto hat = std::make_shared<const GammaHat>(theory_, std::move(g), std::move(gamma));
      candidates_.push_back({std::move(model), std::move(source), std::move(hat)});
    } catch (const NotConePreserving &) {
    } catch (const std::invalid_argument &) {
    }
  };
  while (candidateStage_ < stage) {
    ++candidateStage_;
    switch (candidateStage_) {
    case 1:
      if (fincat::preservesCones(f, theory_.cones))
        push(f, fincat::identityNat(f), "a");
      break;
    case 2:
      for (ObjId x = 0; x < cat->objectCount(); ++x) {
        FinFunctor y = fincat::yoneda(cat, x);
        y.setName("y(" + cat->objectName(x) + ")");
        if (!fincat::preservesCones(y, theory_.cones))
          continue;
        for (auto &gamma : fincat::enumerateNatTrans(f, y, config_.maxGammas))
          push(y, std::move(gamma), "b");
      }
      break;
    case 3:
      for (const auto &m : config_.models)
        push(m.target, m.gamma, "c");
      break;
    case 4: {
      bool exhausted = false;
      fincat::FunctorSearch search{config_.maxCarrier, config_.functorNodes, 0};
      auto keep = [&](const FinFunctor &g) {
        return static_cast<bool>(fincat::preservesCones(g, theory_.cones));
      };
      auto found = fincat::enumerateFunctors(cat, search, exhausted, keep);
      int i = 0;
      for (auto &g : found) {
        g.setName("G" + std::to_string(i++));
        for (auto &gamma : fincat::enumerateNatTrans(f, g, config_.maxGammas))
          push(g, std::move(gamma), "d");
      }
      break;
    }
    default:
      break;
    }
  }
}

std::optional<Separator> ReflectedPresheaf::trySeparate(Term s, Term t, std::size_t from,
                                                        std::size_t to) const {
  for (std::size_t i = from; i < to && i < candidates_.size(); ++i) {
    const auto &cand = candidates_[i];
    int a = (*cand.hat)(s), b = (*cand.hat)(t);
    if (a == b)
      continue;
    ObjId obj = s.sort().value;
    return Separator{cand.model, cand.source, a, b, cand.hat->target().elementName(obj, a),
                     cand.hat->target().elementName(obj, b)};
  }
  return std::nullopt;
}

std::optional<Separator> ReflectedPresheaf::findSeparator(Term s, Term t) const {
  std::lock_guard lock(mutex_);
  std::size_t done = 0;
  for (int stage = 1; stage <= 4; ++stage) {
    buildCandidates(stage);
    if (auto sep = trySeparate(s, t, done, candidates_.size()))
      return sep;
    done = candidates_.size();
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Equality

EqResult ReflectedPresheaf::equal(Term s, Term t) const {
  if (!msa::isClosed(s) || !msa::isClosed(t))
    throw std::invalid_argument("equal expects closed terms");
  if (s.sort() != t.sort())
    throw msa::SortMismatch(theory_.sig->show(s) + " : " + theory_.sig->sortName(s.sort()) +
                            " vs " + theory_.sig->show(t) + " : " +
                            theory_.sig->sortName(t.sort()));
  if (config_.mode == EngineMode::Nbe) {
    if (!nbeRefusal_) {
      try {
        return equalNbe(s, t);
      } catch (const EngineIncoherent &e) {
        EqResult r = equalSaturation(s, t);
        r.note = std::string("normalizer incoherent, fell back to saturation: ") + e.what();
        return r;
      } catch (const NoCanonicalForm &e) {
        EqResult r = equalSaturation(s, t);
        r.note = std::string("no canonical form: ") + e.what();
        return r;
      }
    }
    EqResult r = equalSaturation(s, t);
    r.note = "no canonical form: " + *nbeRefusal_;
    return r;
  }
  return equalSaturation(s, t);
}

EqResult ReflectedPresheaf::equalNbe(Term s, Term t) const {
  EqResult r;
  r.engine = EngineMode::Nbe;
  r.budget.budget = config_.budget;
  Value a = normalize(s), b = normalize(t);
  r.lhsNormal = show(a);
  r.rhsNormal = show(b);
  if (a == b) {
    r.kind = EqResult::Kind::Equal;
    return r;
  }
  if (auto sep = findSeparator(s, t)) {
    r.kind = EqResult::Kind::Distinct;
    r.separator = std::move(sep);
  } else {
    r.note = "normal forms differ but no separating model was found";
  }
  return r;
}

EqResult ReflectedPresheaf::equalSaturation(Term s, Term t) const {
  EqResult r;
  r.engine = EngineMode::Saturation;
  r.budget.budget = config_.budget;
  SaturationEngine engine(theory_, {config_.budget.maxTermSize, config_.budget.maxMerges,
                                    config_.saturationNodes});
  auto a = engine.add(s), b = engine.add(t);
  engine.run(a, b);
  r.budget.universeSize = engine.nodeCount();
  r.budget.merges = engine.merges();
  r.budget.instances = engine.roundsRun();
  r.budget.exhausted = engine.exhausted();
  r.lhsNormal = theory_.sig->show(engine.extract(a));
  r.rhsNormal = theory_.sig->show(engine.extract(b));
  if (engine.same(a, b)) {
    r.kind = EqResult::Kind::Equal;
    return r;
  }
  if (auto sep = findSeparator(s, t)) {
    r.kind = EqResult::Kind::Distinct;
    r.separator = std::move(sep);
  } else {
    r.note = engine.saturated() ? "saturated without merging and no separating model was found"
                                : "budget exhausted";
  }
  return r;
}

} // namespace catwb::completion
