#include "catwb/eqlz/equalizer.hpp"

#include <array>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "catwb/msa/enumerate.hpp"

namespace catwb::eqlz {

using msa::Equation;
using msa::FinAlgebra;
using msa::SortId;
using msa::SymbolId;
using msa::Term;

EqualizerCheck isEqualizer(const FinCategory &cat, const EqualizerCone &cone) {
  EqualizerCheck r;
  auto fail = [&](std::string w) {
    r.ok = false;
    r.witness = std::move(w);
    return r;
  };
  auto mor = [&](MorId m) { return cat.morphismName(m); };
  if (cat.cod(cone.e) != cat.dom(cone.f) || cat.dom(cone.f) != cat.dom(cone.g) ||
      cat.cod(cone.f) != cat.cod(cone.g))
    return fail("expected e : E -> A and f, g : A -> B");
  if (cat.compose(cone.f, cone.e) != cat.compose(cone.g, cone.e))
    return fail(mor(cone.f) + "∘" + mor(cone.e) + " != " + mor(cone.g) + "∘" + mor(cone.e));
  ObjId E = cat.dom(cone.e), A = cat.cod(cone.e);
  for (ObjId x = 0; x < cat.objectCount(); ++x) {
    for (MorId m : cat.hom(x, A)) {
      if (cat.compose(cone.f, m) != cat.compose(cone.g, m))
        continue;
      std::size_t n = 0;
      for (MorId u : cat.hom(x, E))
        n += cat.compose(cone.e, u) == m;
      if (n != 1)
        return fail(mor(m) + " equalizes but has " + std::to_string(n) + " factorizations through " +
                    mor(cone.e));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string EssentialTheory::describeTranscript() const {
  std::ostringstream out;
  for (const auto &r : transcript_) {
    out << "round " << r.round << ": typable " << r.typable << ", admitted " << r.admitted
        << ", classes " << r.classes << ", merges " << r.merges;
    if (r.exhausted)
      out << ", exhausted";
    out << "\n";
  }
  out << (fixpoint_ ? "fixpoint" : "no fixpoint") << (truncated_ ? ", truncated" : "")
      << " at size " << bounds_.maxTermSize << "\n";
  return out.str();
}

EssentialTheory buildEqualizerTheory(std::shared_ptr<const FinCategory> cat,
                                     const ConeCollection &products,
                                     std::vector<EqualizerCone> equalizers,
                                     const std::optional<FinFunctor> &f, FixpointBounds bounds) {
  EssentialTheory out;
  out.theory_ = f ? theories::theoryOfFunctor(cat, products, *f)
                  : theories::theoryWithCones(cat, products);
  out.bounds_ = bounds;
  for (const auto &c : equalizers)
    if (auto check = isEqualizer(*cat, c); !check)
      throw std::invalid_argument("equalizer cone " + c.name + ": " + check.witness);
  out.cones_ = std::move(equalizers);

  auto &th = out.theory_;
  msa::Signature &sig = *th.sig;
  const FinCategory &C = *cat;
  const std::vector<Equation> baseAxioms = th.equations;
  for (std::size_t k = 0; k < out.cones_.size(); ++k) {
    const auto &c = out.cones_[k];
    std::string name = out.cones_.size() == 1 ? "eql" : "eql." + c.name;
    SymbolId s = sig.addSymbol(name, {th.sort(C.cod(c.e))}, th.sort(C.dom(c.e)));
    out.eql_.push_back(s);
    th.origins.push_back({theories::SymbolOrigin::Kind::Eql, static_cast<std::uint32_t>(k), 0, 0});
    Term x = sig.variable("x", th.sort(C.dom(c.e)));
    Equation eta = msa::makeEquation(x, sig.apply(s, {sig.apply(th.morphismSymbol(c.e), {x})}));
    out.eta_.push_back(eta);
    th.equations.push_back(eta);
    th.kinds.push_back(theories::EquationKind::Eta);
  }

  std::unordered_set<Term, msa::TermHash> admittedSet;
  auto admit = [&](SymbolId s, std::span<const Term> args) {
    if (th.origin(s).kind != theories::SymbolOrigin::Kind::Eql)
      return true;
    auto found = sig.find(s, args);
    return found && admittedSet.contains(*found);
  };

  std::shared_ptr<msa::BoundedCongruence> prev;
  for (std::size_t round = 1; round <= bounds.maxRounds; ++round) {
    std::size_t fresh = 0;
    if (prev) {
      for (Term t : prev->universe()) {
        for (std::size_t k = 0; k < out.cones_.size(); ++k) {
          const auto &c = out.cones_[k];
          if (t.sort() != th.sort(C.cod(c.e)) || t.size() + 1 > bounds.maxTermSize)
            continue;
          auto ft = sig.find(th.morphismSymbol(c.f), {&t, 1});
          auto gt = sig.find(th.morphismSymbol(c.g), {&t, 1});
          if (!ft || !gt || !prev->equivalent(*ft, *gt))
            continue;
          Term q = sig.apply(out.eql_[k], {t});
          if (!admittedSet.insert(q).second)
            continue;
          ++fresh;
          out.admitted_.push_back(q);
          out.guards_.push_back(*prev->explain(*ft, *gt));
          Equation beta = msa::makeEquation(sig.apply(th.morphismSymbol(c.e), {q}), t);
          out.beta_.push_back(beta);
          th.equations.push_back(beta);
          th.kinds.push_back(theories::EquationKind::Beta);
        }
      }
    }

    out.axioms_ = baseAxioms;
    out.axioms_.insert(out.axioms_.end(), out.eta_.begin(), out.eta_.end());
    out.axioms_.insert(out.axioms_.end(), out.beta_.begin(), out.beta_.end());
    msa::TermLayers layers(sig, bounds.maxTermSize, {}, admit);
    auto universe = layers.all();
    auto cong = std::make_shared<msa::BoundedCongruence>(
        msa::BoundedCongruence::overUniverse(sig, out.axioms_, universe, bounds.maxMerges));

    if (prev) {
      for (Term t : prev->universe()) {
        Term rep = prev->universe()[prev->classOf(t)];
        if (!cong->equivalent(t, rep))
          out.monotone_ = false;
      }
    }

    RoundRecord rec;
    rec.round = round;
    rec.typable = cong->universe().size();
    rec.admitted = out.admitted_.size();
    rec.classes = cong->classCount();
    rec.merges = cong->report().merges;
    rec.exhausted = cong->report().exhausted;
    out.transcript_.push_back(rec);
    if (rec.exhausted)
      out.truncated_ = true;

    prev = cong;
    if (fresh == 0 && (round > 1 || out.cones_.empty())) {
      out.fixpoint_ = true;
      break;
    }
  }
  out.congruence_ = prev;
  if (!out.fixpoint_)
    out.truncated_ = true;
  return out;
}

// ---------------------------------------------------------------------------

FinAlgebra functorToPartialAlgebra(const EssentialTheory &t, const FinFunctor &g) {
  FinAlgebra alg = theories::functorToAlgebra(t.base(), g);
  for (std::size_t k = 0; k < t.cones().size(); ++k) {
    const auto &c = t.cones()[k];
    ObjId E = g.category().dom(c.e), A = g.category().cod(c.e);
    std::vector<int> table(g.carrierSize(A), FinAlgebra::kUndefined);
    for (int x = 0; x < static_cast<int>(table.size()); ++x) {
      if (g.apply(c.f, x) != g.apply(c.g, x))
        continue;
      for (int y = 0; y < static_cast<int>(g.carrierSize(E)); ++y)
        if (g.apply(c.e, y) == x) {
          table[x] = y;
          break;
        }
    }
    alg.setTable(t.eqlSymbol(k), std::move(table));
  }
  return alg;
}

EqualizerCheck partialAlgebraCheck(const EssentialTheory &t, const FinAlgebra &alg,
                                   std::size_t cone) {
  const auto &c = t.cones().at(cone);
  const FinCategory &C = t.base().cat();
  SortId E = t.base().sort(C.dom(c.e)), A = t.base().sort(C.cod(c.e));
  SymbolId eql = t.eqlSymbol(cone);
  const auto &th = t.base();
  EqualizerCheck r;
  auto fail = [&](std::string w) {
    r.ok = false;
    r.witness = std::move(w);
    return r;
  };
  auto name = [&](SortId s, std::optional<int> v) {
    return v ? alg.elementName(s, static_cast<std::size_t>(*v)) : std::string("undefined");
  };
  SortId B = t.base().sort(C.cod(c.f));
  const std::string &eqlName = t.sig().symbol(eql).name;
  for (int x = 0; x < static_cast<int>(alg.carrierSize(A)); ++x) {
    std::array<int, 1> arg{x};
    auto fx = alg.apply(th.morphismSymbol(c.f), arg), gx = alg.apply(th.morphismSymbol(c.g), arg);
    auto q = alg.apply(eql, arg);
    bool equalized = fx && gx && *fx == *gx;
    const std::string &xn = alg.elementName(A, static_cast<std::size_t>(x));
    if (equalized && !q)
      return fail(eqlName + "(" + xn + ") is undefined though f and g agree at it (" +
                  name(B, fx) + ")");
    if (!equalized && q)
      return fail(eqlName + "(" + xn + ") is defined though f gives " + name(B, fx) +
                  " and g gives " + name(B, gx));
    if (!q)
      continue;
    std::array<int, 1> qa{*q};
    auto back = alg.apply(th.morphismSymbol(c.e), qa);
    if (back != std::optional<int>(x))
      return fail("beta: e(" + eqlName + "(" + xn + ")) = " + name(A, back) + ", not " + xn);
  }
  for (int y = 0; y < static_cast<int>(alg.carrierSize(E)); ++y) {
    std::array<int, 1> arg{y};
    auto ey = alg.apply(th.morphismSymbol(c.e), arg);
    std::optional<int> back;
    if (ey) {
      std::array<int, 1> ea{*ey};
      back = alg.apply(eql, ea);
    }
    if (back != std::optional<int>(y)) {
      const std::string &yn = alg.elementName(E, static_cast<std::size_t>(y));
      return fail("eta: " + eqlName + "(e(" + yn + ")) = " + name(E, back) + ", not " + yn);
    }
  }
  return r;
}

EqualizerCheck preservesEqualizer(const FinFunctor &g, const EqualizerCone &cone) {
  const FinCategory &C = g.category();
  ObjId E = C.dom(cone.e), A = C.cod(cone.e);
  EqualizerCheck r;
  std::vector<int> preimages(g.carrierSize(A), 0);
  for (int y = 0; y < static_cast<int>(g.carrierSize(E)); ++y)
    ++preimages[g.apply(cone.e, y)];
  for (int x = 0; x < static_cast<int>(preimages.size()); ++x) {
    bool equalized = g.apply(cone.f, x) == g.apply(cone.g, x);
    int want = equalized ? 1 : 0;
    if (preimages[x] != want) {
      r.ok = false;
      r.witness = g.elementName(A, x) + (equalized ? " is equalized" : " is not equalized") +
                  " and has " + std::to_string(preimages[x]) + " preimages under " +
                  g.name() + "(" + C.morphismName(cone.e) + ")";
      return r;
    }
  }
  return r;
}

std::optional<std::string> classViolation(const EssentialTheory &t, const FinFunctor &g) {
  FinAlgebra alg = functorToPartialAlgebra(t, g);
  const auto &sig = t.sig();
  for (const auto &cls : t.congruence().classes()) {
    std::optional<int> first;
    for (Term u : cls) {
      auto v = alg.evaluate(u, {});
      if (!v)
        return sig.show(u) + " is undefined in " + g.name();
      if (!first)
        first = v;
      else if (*v != *first)
        return sig.show(cls.front()) + " ≈ " + sig.show(u) + " but " + g.name() + " gives " +
               alg.elementName(u.sort(), static_cast<std::size_t>(*first)) + " and " +
               alg.elementName(u.sort(), static_cast<std::size_t>(*v));
    }
  }
  return std::nullopt;
}

Correspondence correspondenceEq(const EssentialTheory &t, const FinFunctor &g) {
  Correspondence out;
  out.preserves = true;
  out.algebraPasses = true;
  FinAlgebra alg = functorToPartialAlgebra(t, g);
  for (std::size_t k = 0; k < t.cones().size(); ++k) {
    if (auto p = preservesEqualizer(g, t.cones()[k]); !p && out.preserves) {
      out.preserves = false;
      out.witness += (out.witness.empty() ? "" : "; ") + p.witness;
    }
    if (auto a = partialAlgebraCheck(t, alg, k); !a && out.algebraPasses) {
      out.algebraPasses = false;
      out.witness += (out.witness.empty() ? "" : "; ") + a.witness;
    }
  }
  out.roundTrip = theories::algebraToFunctor(t.base(), alg).sameTables(g);
  return out;
}

} // namespace catwb::eqlz
