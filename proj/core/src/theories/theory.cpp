#include "catwb/theories/theory.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace catwb::theories {

using msa::Equation;
using msa::SortId;
using msa::SymbolId;
using msa::Term;

const char *kindName(EquationKind k) {
  switch (k) {
  case EquationKind::Identity:
    return "id";
  case EquationKind::Composition:
    return "comp";
  case EquationKind::Fst:
    return "fst";
  case EquationKind::Snd:
    return "snd";
  case EquationKind::PairEta:
    return "pair";
  case EquationKind::Unit:
    return "unit";
  case EquationKind::Action:
    return "action";
  case EquationKind::Beta:
    return "beta";
  case EquationKind::Eta:
    return "eta";
  }
  return "?";
}

std::optional<SymbolId> Theory::pairSymbol(std::size_t cone) const {
  if (cone >= coneSymbols.size() || cones[cone].nullary)
    return std::nullopt;
  return coneSymbols[cone];
}

std::optional<SymbolId> Theory::unitSymbol(std::size_t cone) const {
  if (cone >= coneSymbols.size() || !cones[cone].nullary)
    return std::nullopt;
  return coneSymbols[cone];
}

SymbolId Theory::constantSymbol(ObjId a, int x) const { return constants.at(a).at(x); }

std::size_t Theory::countKind(EquationKind k) const {
  return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), k));
}

std::vector<Equation> Theory::equationsOf(std::initializer_list<EquationKind> ks) const {
  std::vector<Equation> out;
  for (std::size_t i = 0; i < equations.size(); ++i)
    if (std::find(ks.begin(), ks.end(), kinds[i]) != ks.end())
      out.push_back(equations[i]);
  return out;
}

std::string Theory::listing() const {
  std::vector<std::string> sorts, symbols, eqs;
  for (std::uint32_t s = 0; s < sig->sortCount(); ++s)
    sorts.push_back(sig->sortName(SortId{s}));
  for (std::uint32_t f = 0; f < sig->symbolCount(); ++f) {
    const auto &sym = sig->symbol(SymbolId{f});
    std::string line = sym.name + " :";
    for (std::size_t i = 0; i < sym.args.size(); ++i)
      line += (i ? ", " : " ") + sig->sortName(sym.args[i]);
    line += " -> " + sig->sortName(sym.result);
    symbols.push_back(line);
  }
  for (std::size_t i = 0; i < equations.size(); ++i)
    eqs.push_back(std::string("[") + kindName(kinds[i]) + "] " + msa::show(*sig, equations[i]));
  std::sort(sorts.begin(), sorts.end());
  std::sort(symbols.begin(), symbols.end());
  std::sort(eqs.begin(), eqs.end());
  std::ostringstream out;
  out << "sorts " << sorts.size() << "\n";
  for (const auto &s : sorts)
    out << "  " << s << "\n";
  out << "symbols " << symbols.size() << "\n";
  for (const auto &s : symbols)
    out << "  " << s << "\n";
  out << "equations " << eqs.size() << "\n";
  for (const auto &s : eqs)
    out << "  " << s << "\n";
  return out.str();
}

namespace {

void add(Theory &t, Equation e, EquationKind k) {
  t.equations.push_back(e);
  t.kinds.push_back(k);
}

std::string freshName(const msa::Signature &sig, const std::string &base) {
  std::string name = base;
  for (int i = 2; sig.findSymbol(name); ++i)
    name = base + "_" + std::to_string(i);
  return name;
}

} // namespace

Theory theoryOfCategory(std::shared_ptr<const FinCategory> cat) {
  Theory t;
  t.category = cat;
  t.sig = std::make_shared<msa::Signature>();
  const FinCategory &c = *cat;
  for (ObjId a = 0; a < c.objectCount(); ++a)
    t.sig->addSort(c.objectName(a));
  for (MorId m = 0; m < c.morphismCount(); ++m) {
    t.sig->addSymbol(c.morphismName(m), {SortId{c.dom(m)}}, SortId{c.cod(m)});
    t.origins.push_back({SymbolOrigin::Kind::Morphism, m, 0, 0});
  }
  for (ObjId a = 0; a < c.objectCount(); ++a) {
    Term x = t.sig->variable("x", SortId{a});
    add(t, msa::makeEquation(t.sig->apply(SymbolId{c.identity(a)}, {x}), x),
        EquationKind::Identity);
  }
  // h(x) ≈ f(g(x)) for g : A -> B, f : B -> C, h = f∘g.
  for (MorId g = 0; g < c.morphismCount(); ++g) {
    for (MorId f = 0; f < c.morphismCount(); ++f) {
      if (c.cod(g) != c.dom(f))
        continue;
      MorId h = c.compose(f, g);
      Term x = t.sig->variable("x", SortId{c.dom(g)});
      add(t,
          msa::makeEquation(t.sig->apply(SymbolId{h}, {x}),
                            t.sig->apply(SymbolId{f}, {t.sig->apply(SymbolId{g}, {x})})),
          EquationKind::Composition);
    }
  }
  t.constants.assign(c.objectCount(), {});
  return t;
}

Theory theoryWithCones(std::shared_ptr<const FinCategory> cat, const ConeCollection &cones) {
  Theory t = theoryOfCategory(cat);
  const FinCategory &c = *cat;
  t.cones = cones;
  std::size_t binary = 0, nullary = 0;
  for (const auto &cone : cones.cones()) {
    if (auto check = fincat::isProductCone(c, cone); !check)
      throw InvalidCone(cone.name, check.witness->message);
    (cone.nullary ? nullary : binary) += 1;
  }
  for (std::size_t i = 0; i < cones.size(); ++i) {
    const auto &cone = cones[i];
    auto &sig = *t.sig;
    SortId C{cone.apex};
    if (cone.nullary) {
      std::string base = nullary > 1 ? "unit." + cone.name : "unit";
      SymbolId u = sig.addSymbol(freshName(sig, base), {}, C);
      t.origins.push_back({SymbolOrigin::Kind::Unit, static_cast<std::uint32_t>(i), 0, 0});
      t.coneSymbols.push_back(u);
      Term z = sig.variable("z", C);
      add(t, msa::makeEquation(z, sig.constant(u)), EquationKind::Unit);
      continue;
    }
    SortId A{cone.left}, B{cone.right};
    std::string base = binary > 1 ? "pair." + cone.name : "pair";
    SymbolId p = sig.addSymbol(freshName(sig, base), {A, B}, C);
    t.origins.push_back({SymbolOrigin::Kind::Pair, static_cast<std::uint32_t>(i), 0, 0});
    t.coneSymbols.push_back(p);
    Term x = sig.variable("x", A), y = sig.variable("y", B), z = sig.variable("z", C);
    SymbolId fst{cone.fst}, snd{cone.snd};
    Term pxy = sig.apply(p, {x, y});
    add(t, msa::makeEquation(sig.apply(fst, {pxy}), x), EquationKind::Fst);
    add(t, msa::makeEquation(sig.apply(snd, {pxy}), y), EquationKind::Snd);
    add(t,
        msa::makeEquation(sig.apply(p, {sig.apply(fst, {z}), sig.apply(snd, {z})}), z),
        EquationKind::PairEta);
  }
  return t;
}

Theory theoryOfFunctor(std::shared_ptr<const FinCategory> cat, const ConeCollection &cones,
                       const FinFunctor &f) {
  Theory t = theoryWithCones(cat, cones);
  const FinCategory &c = *cat;
  t.functor = f;
  auto &sig = *t.sig;
  for (ObjId a = 0; a < c.objectCount(); ++a) {
    for (std::size_t x = 0; x < f.carrierSize(a); ++x) {
      std::string name = c.objectName(a) + "." + f.elementName(a, static_cast<int>(x));
      SymbolId k = sig.addSymbol(freshName(sig, name), {}, SortId{a});
      t.origins.push_back({SymbolOrigin::Kind::Constant, 0, a, static_cast<int>(x)});
      t.constants[a].push_back(k);
    }
  }
  // d ≈ m(c) for m : A -> B and d = F(m)(c).
  for (MorId m = 0; m < c.morphismCount(); ++m) {
    ObjId a = c.dom(m), b = c.cod(m);
    for (std::size_t x = 0; x < f.carrierSize(a); ++x) {
      Term cx = t.constant(a, static_cast<int>(x));
      Term d = t.constant(b, f.apply(m, static_cast<int>(x)));
      add(t, msa::makeEquation(d, sig.apply(SymbolId{m}, {cx})), EquationKind::Action);
    }
  }
  return t;
}

msa::FinAlgebra functorToAlgebra(const Theory &t, const FinFunctor &g, const NatTrans *gamma) {
  const FinCategory &c = t.cat();
  msa::FinAlgebra alg(t.sig);
  for (ObjId a = 0; a < c.objectCount(); ++a)
    alg.setCarrier(SortId{a}, g.carrier(a));
  for (MorId m = 0; m < c.morphismCount(); ++m)
    alg.setTable(SymbolId{m}, g.action(m));
  for (std::size_t i = 0; i < t.coneSymbols.size(); ++i) {
    const auto &cone = t.cones[i];
    SymbolId s = *t.coneSymbols[i];
    std::size_t n = g.carrierSize(cone.apex);
    if (cone.nullary) {
      alg.setTable(s, {n > 0 ? 0 : msa::FinAlgebra::kUndefined});
      continue;
    }
    std::size_t nb = g.carrierSize(cone.right);
    std::vector<int> table(g.carrierSize(cone.left) * nb, msa::FinAlgebra::kUndefined);
    for (std::size_t z = n; z-- > 0;) {
      int p = g.apply(cone.fst, static_cast<int>(z)), q = g.apply(cone.snd, static_cast<int>(z));
      table[static_cast<std::size_t>(p) * nb + static_cast<std::size_t>(q)] = static_cast<int>(z);
    }
    alg.setTable(s, std::move(table));
  }
  for (ObjId a = 0; a < t.constants.size(); ++a) {
    for (std::size_t x = 0; x < t.constants[a].size(); ++x) {
      int v = gamma ? gamma->at(a, static_cast<int>(x)) : static_cast<int>(x);
      if (!gamma && static_cast<std::size_t>(v) >= g.carrierSize(a))
        v = msa::FinAlgebra::kUndefined;
      alg.setTable(t.constants[a][x], {v});
    }
  }
  return alg;
}

std::optional<std::string> modelViolation(const Theory &t, const msa::FinAlgebra &alg,
                                          std::initializer_list<EquationKind> ks) {
  std::set<std::uint32_t> mentioned;
  std::function<void(Term)> collect = [&](Term u) {
    if (u.isVariable())
      return;
    mentioned.insert(u.symbol().value);
    for (Term a : u.args())
      collect(a);
  };
  for (const auto &e : t.equationsOf(ks)) {
    collect(e.lhs);
    collect(e.rhs);
  }
  // A partial constant would make its equations vacuous; other partial
  // operations are caught by evaluation.
  for (std::uint32_t f : mentioned)
    if (t.sig->symbol(SymbolId{f}).isConstant())
      for (int v : alg.table(SymbolId{f}))
      if (v == msa::FinAlgebra::kUndefined)
        return t.sig->symbol(SymbolId{f}).name + " is not total";
  for (const auto &e : t.equationsOf(ks))
    if (auto w = msa::findViolation(alg, e)) {
      std::string at;
      for (const auto &[var, val] : *w)
        at += (at.empty() ? " at " : ", ") + var.variableName() + " = " +
              alg.elementName(var.sort(), static_cast<std::size_t>(val));
      return msa::show(*t.sig, e) + at;
    }
  return std::nullopt;
}

FinFunctor algebraToFunctor(const Theory &t, const msa::FinAlgebra &alg, std::string name) {
  if (auto v = modelViolation(t, alg, {EquationKind::Identity, EquationKind::Composition}))
    throw NotAModel(*v);
  const FinCategory &c = t.cat();
  FinFunctor f(t.category, std::move(name));
  for (ObjId a = 0; a < c.objectCount(); ++a)
    f.setCarrier(a, alg.carrier(SortId{a}));
  for (MorId m = 0; m < c.morphismCount(); ++m)
    f.setAction(m, alg.table(SymbolId{m}));
  return f;
}

} // namespace catwb::theories
