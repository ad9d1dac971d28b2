#include "catwb/completion/adjunction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

#include "catwb/msa/enumerate.hpp"

namespace catwb::completion {

using msa::Term;

std::string UniversalPropertyReport::describe() const {
  std::ostringstream out;
  out << "unit law: " << (unitLaw ? "ok" : "FAIL " + unitWitness) << "\n";
  out << "naturality: " << (naturality ? "ok" : "FAIL " + naturalityWitness) << "\n";
  out << "uniqueness: " << (uniqueness ? "ok" : "FAIL " + uniquenessWitness) << " (" << samples
      << " samples, " << classes << " classes, " << constraints << " constraints, " << solutions
      << " solutions" << (searchExhausted ? ", search cut off" : "") << ")\n";
  return out.str();
}

std::vector<Term> sampleTerms(const ReflectedPresheaf &r, std::size_t count, std::size_t maxSize,
                              std::uint64_t seed) {
  msa::TermLayers layers(*r.theory().sig, maxSize);
  std::vector<Term> all = layers.all();
  std::mt19937_64 rng(seed);
  std::shuffle(all.begin(), all.end(), rng);
  if (all.size() > count)
    all.resize(count);
  std::sort(all.begin(), all.end(), msa::TermIdLess{});
  return all;
}

std::vector<Term> closeSamples(const ReflectedPresheaf &r, std::vector<Term> samples) {
  const auto &t = r.theory();
  std::unordered_set<Term, msa::TermHash> seen;
  std::vector<Term> out;
  std::function<void(Term)> visit = [&](Term x) {
    if (!seen.insert(x).second)
      return;
    out.push_back(x);
    for (Term a : x.args())
      visit(a);
    if (x.size() > 32) // apex cycles would never close
      return;
    for (std::size_t k : t.cones.conesAt(x.sort().value)) {
      const auto &cone = t.cones[k];
      if (cone.nullary)
        continue;
      visit(r.act(cone.fst, x));
      visit(r.act(cone.snd, x));
    }
  };
  for (Term x : samples)
    visit(x);
  const auto &f = r.source();
  for (fincat::ObjId a = 0; a < r.category().objectCount(); ++a)
    for (int x = 0; x < static_cast<int>(f.carrierSize(a)); ++x)
      visit(r.eta(a, x));
  std::sort(out.begin(), out.end(), msa::TermIdLess{});
  return out;
}

namespace {

struct Constraint {
  fincat::MorId f;
  std::size_t from, to;
};

} // namespace

UniversalPropertyReport checkUniversalProperty(const ReflectedPresheaf &r, const FinFunctor &g,
                                               const NatTrans &gamma,
                                               const std::vector<Term> &samples,
                                               const NatTrans *hatFrom, std::size_t searchNodes) {
  UniversalPropertyReport rep;
  const auto &theory = r.theory();
  const FinCategory &c = r.category();
  const auto &f = r.source();
  GammaHat hat(theory, g, hatFrom ? *hatFrom : gamma);
  auto &sig = *theory.sig;

  for (fincat::ObjId a = 0; a < c.objectCount() && rep.unitLaw; ++a) {
    for (int x = 0; x < static_cast<int>(f.carrierSize(a)); ++x) {
      int got = hat(r.eta(a, x));
      if (got != gamma.at(a, x)) {
        rep.unitLaw = false;
        rep.unitWitness = "at " + sig.show(r.eta(a, x)) + ": γ̂ gives " + g.elementName(a, got) +
                          ", γ gives " + g.elementName(a, gamma.at(a, x));
        break;
      }
    }
  }

  rep.samples = samples.size();
  for (Term t : samples) {
    if (!rep.naturality)
      break;
    fincat::ObjId a = t.sort().value;
    for (fincat::MorId m = 0; m < c.morphismCount(); ++m) {
      if (c.dom(m) != a)
        continue;
      int lhs = hat(r.act(m, t)), rhs = g.apply(m, hat(t));
      if (lhs != rhs) {
        rep.naturality = false;
        rep.naturalityWitness = c.morphismName(m) + " on " + sig.show(t);
        break;
      }
    }
  }

  // Classes of samples by normal form; without canonical forms each sample
  // is its own class.
  std::vector<std::size_t> classOf(samples.size());
  std::vector<fincat::ObjId> classSort;
  std::vector<Term> classTerm;
  {
    std::map<std::uint32_t, std::size_t> byValue;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::optional<std::uint32_t> key;
      if (r.hasCanonicalForms())
        key = r.normalize(samples[i]).id;
      if (key) {
        auto [it, fresh] = byValue.emplace(*key, classSort.size());
        if (fresh) {
          classSort.push_back(samples[i].sort().value);
          classTerm.push_back(samples[i]);
        }
        classOf[i] = it->second;
      } else {
        classOf[i] = classSort.size();
        classSort.push_back(samples[i].sort().value);
        classTerm.push_back(samples[i]);
      }
    }
  }
  rep.classes = classSort.size();
  std::unordered_map<Term, std::size_t, msa::TermHash> index;
  for (std::size_t i = 0; i < samples.size(); ++i)
    index.emplace(samples[i], i);

  const std::size_t n = classSort.size();
  std::vector<int> fixed(n, -1);
  std::vector<std::vector<Constraint>> touching(n);
  bool contradictory = false;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Term t = samples[i];
    const auto &origin = theory.origin(t.symbol());
    if (origin.kind == theories::SymbolOrigin::Kind::Constant) {
      int want = gamma.at(origin.object, origin.element);
      int &slot = fixed[classOf[i]];
      if (slot >= 0 && slot != want)
        contradictory = true;
      slot = want;
    }
    for (fincat::MorId m = 0; m < c.morphismCount(); ++m) {
      if (c.dom(m) != t.sort().value)
        continue;
      auto it = index.find(r.act(m, t));
      if (it == index.end())
        continue;
      Constraint k{m, classOf[i], classOf[it->second]};
      touching[k.from].push_back(k);
      if (k.to != k.from)
        touching[k.to].push_back(k);
      ++rep.constraints;
    }
  }

  std::vector<int> value(n, -1);
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> consistent = [&](std::size_t v) {
    for (const auto &k : touching[v])
      if (value[k.from] >= 0 && value[k.to] >= 0 && g.apply(k.f, value[k.from]) != value[k.to])
        return false;
    return true;
  };
  // Propagates forced values from v; records what it set so it can undo.
  std::function<bool(std::size_t, std::vector<std::size_t> &)> propagate =
      [&](std::size_t v, std::vector<std::size_t> &trail) {
        std::vector<std::size_t> work{v};
        while (!work.empty()) {
          std::size_t u = work.back();
          work.pop_back();
          for (const auto &k : touching[u]) {
            if (k.from != u || value[k.to] >= 0)
              continue;
            value[k.to] = g.apply(k.f, value[u]);
            trail.push_back(k.to);
            if (!consistent(k.to))
              return false;
            work.push_back(k.to);
          }
          if (!consistent(u))
            return false;
        }
        return true;
      };
  std::function<void(std::size_t)> search = [&](std::size_t v) {
    if (!rep.uniqueness || rep.searchExhausted)
      return;
    if (++nodes > searchNodes) {
      rep.searchExhausted = true;
      return;
    }
    while (v < n && value[v] >= 0)
      ++v;
    if (v == n) {
      ++rep.solutions;
      for (std::size_t i = 0; i < n; ++i) {
        int expected = hat(classTerm[i]);
        if (value[i] != expected) {
          rep.uniqueness = false;
          rep.uniquenessWitness = "an assignment sends " + sig.show(classTerm[i]) + " to " +
                                  g.elementName(classSort[i], value[i]) + ", γ̂ gives " +
                                  g.elementName(classSort[i], expected);
          return;
        }
      }
      return;
    }
    std::vector<int> domain;
    if (fixed[v] >= 0)
      domain.push_back(fixed[v]);
    else
      for (int e = 0; e < static_cast<int>(g.carrierSize(classSort[v])); ++e)
        domain.push_back(e);
    for (int e : domain) {
      std::vector<std::size_t> trail{v};
      value[v] = e;
      bool ok = propagate(v, trail);
      for (std::size_t u : trail)
        if (ok && fixed[u] >= 0 && value[u] != fixed[u])
          ok = false;
      if (ok)
        search(v + 1);
      for (std::size_t u : trail)
        value[u] = -1;
      if (!rep.uniqueness || rep.searchExhausted)
        return;
    }
  };
  if (contradictory) {
    rep.uniqueness = false;
    rep.uniquenessWitness = "η identifies constants that γ separates";
  } else {
    search(0);
    if (rep.solutions == 0 && rep.uniqueness && !rep.searchExhausted) {
      rep.uniqueness = false;
      rep.uniquenessWitness = "no assignment satisfies the constraints, not even γ̂";
    }
  }
  return rep;
}

} // namespace catwb::completion
