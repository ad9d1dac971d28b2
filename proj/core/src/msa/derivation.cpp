#include "catwb/msa/derivation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "catwb/msa/enumerate.hpp"

namespace catwb::msa {

std::string BudgetReport::describe() const {
  std::ostringstream out;
  out << "size<=" << budget.maxTermSize << " merges<=" << budget.maxMerges
      << " universe=" << universeSize << " instances=" << instances << " merges=" << merges
      << (exhausted ? " (exhausted)" : " (fixpoint)");
  return out.str();
}

const char *ruleName(Rule r) {
  switch (r) {
  case Rule::Ax:
    return "ax";
  case Rule::Subst:
    return "subst";
  case Rule::Refl:
    return "refl";
  case Rule::Symm:
    return "symm";
  case Rule::Trans:
    return "trans";
  case Rule::Cong:
    return "cong";
  }
  return "?";
}

std::string Trace::serialize(const Signature &sig) const {
  std::ostringstream out;
  for (const TraceStep &step : steps) {
    out << ruleName(step.rule);
    for (std::size_t p : step.premises)
      out << ' ' << p;
    out << " ⟹ " << show(sig, step.conclusion) << '\n';
  }
  return out.str();
}

namespace {

bool isSubstInstance(const Signature &sig, const Equation &premise, const Equation &concl) {
  if (premise.sort != concl.sort)
    return false;
  std::vector<Term> vars = variablesOf(premise.lhs);
  variablesOf(premise.rhs, vars);
  if (premise.lhs == concl.lhs && premise.rhs == concl.rhs)
    return true;
  for (Term x : vars) {
    // Read the replacement off the conclusion at x's first occurrence.
    std::optional<Term> r;
    if (auto path = findOccurrence(premise.lhs, x))
      r = subtermAt(concl.lhs, *path);
    else if (auto path2 = findOccurrence(premise.rhs, x))
      r = subtermAt(concl.rhs, *path2);
    if (!r || r->sort() != x.sort())
      continue;
    if (substitute(sig, premise.lhs, x, *r) == concl.lhs &&
        substitute(sig, premise.rhs, x, *r) == concl.rhs)
      return true;
  }
  return false;
}

} // namespace

std::optional<std::string> checkTrace(const Signature &sig, std::span<const Equation> axioms,
                                      const Trace &trace, const Equation &goal) {
  if (trace.steps.empty())
    return "empty trace";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep &st = trace.steps[i];
    const Equation &c = st.conclusion;
    auto fail = [&](const std::string &why) {
      return "step " + std::to_string(i) + " (" + ruleName(st.rule) + "): " + why;
    };
    for (std::size_t p : st.premises)
      if (p >= i)
        return fail("premise " + std::to_string(p) + " is not an earlier step");
    if (c.lhs.sort() != c.sort || c.rhs.sort() != c.sort)
      return fail("conclusion is ill-sorted");
    auto prem = [&](std::size_t k) -> const Equation & {
      return trace.steps[st.premises[k]].conclusion;
    };
    switch (st.rule) {
    case Rule::Ax:
      if (!st.premises.empty() || std::find(axioms.begin(), axioms.end(), c) == axioms.end())
        return fail("conclusion is not an axiom");
      break;
    case Rule::Subst:
      if (st.premises.size() != 1 || !isSubstInstance(sig, prem(0), c))
        return fail("conclusion is not a one-variable instance of its premise");
      break;
    case Rule::Refl:
      if (!st.premises.empty() || c.lhs != c.rhs)
        return fail("sides differ");
      break;
    case Rule::Symm:
      if (st.premises.size() != 1 || prem(0).lhs != c.rhs || prem(0).rhs != c.lhs)
        return fail("not the mirror of its premise");
      break;
    case Rule::Trans:
      if (st.premises.size() != 2 || prem(0).rhs != prem(1).lhs || prem(0).lhs != c.lhs ||
          prem(1).rhs != c.rhs)
        return fail("premises do not chain to the conclusion");
      break;
    case Rule::Cong: {
      if (c.lhs.isVariable() || c.rhs.isVariable() || c.lhs.symbol() != c.rhs.symbol())
        return fail("sides do not share a head symbol");
      auto ls = c.lhs.args();
      auto rs = c.rhs.args();
      if (st.premises.size() != ls.size())
        return fail("premise count differs from arity");
      for (std::size_t k = 0; k < ls.size(); ++k)
        if (prem(k).lhs != ls[k] || prem(k).rhs != rs[k])
          return fail("premise " + std::to_string(k) + " does not match argument " +
                      std::to_string(k));
      break;
    }
    }
  }
  if (!(trace.conclusion() == goal))
    return "trace concludes " + show(sig, trace.conclusion()) + ", not the goal";
  return std::nullopt;
}

BoundedCongruence::BoundedCongruence(const Signature &sig, std::vector<Equation> axioms,
                                     std::size_t maxMerges)
    : sig_(&sig), axioms_(std::move(axioms)) {
  report_.budget.maxMerges = maxMerges;
}

BoundedCongruence::BoundedCongruence(const Signature &sig, std::vector<Equation> axioms,
                                     Budget budget, std::span<const Term> extra)
    : BoundedCongruence(sig, std::move(axioms), budget.maxMerges) {
  report_.budget = budget;
  std::vector<Term> atoms;
  for (Term t : extra)
    variablesOf(t, atoms);
  std::sort(atoms.begin(), atoms.end(), TermIdLess{});
  TermLayers layers(sig, budget.maxTermSize, atoms);
  for (Term t : layers.all())
    addTerm(t);
  for (Term t : extra)
    addTerm(t);
  finishUniverse();
  instantiate();
  close();
}

BoundedCongruence BoundedCongruence::overUniverse(const Signature &sig,
                                                  std::vector<Equation> axioms,
                                                  std::span<const Term> universe,
                                                  std::size_t maxMerges) {
  BoundedCongruence cc(sig, std::move(axioms), maxMerges);
  std::size_t largest = 0;
  for (Term t : universe) {
    cc.addTerm(t);
    largest = std::max(largest, t.size());
  }
  cc.report_.budget.maxTermSize = largest;
  cc.finishUniverse();
  cc.instantiate();
  cc.close();
  return cc;
}

void BoundedCongruence::addTerm(Term t) {
  if (index_.contains(t.node()))
    return;
  for (Term a : t.args())
    addTerm(a);
  auto id = static_cast<std::uint32_t>(terms_.size());
  terms_.push_back(t);
  index_.emplace(t.node(), id);
  argStart_.push_back(static_cast<std::uint32_t>(args_.size()));
  for (Term a : t.args())
    args_.push_back(index_.at(a.node()));
}

void BoundedCongruence::finishUniverse() {
  argStart_.push_back(static_cast<std::uint32_t>(args_.size()));
  std::size_t n = terms_.size();
  report_.universeSize = n;
  parent_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i)
    parent_[i] = i;
  classSize_.assign(n, 1);
  uses_.assign(n, {});
  proofParent_.assign(n, -1);
  proofWhy_.assign(n, {});
  for (std::uint32_t t = 0; t < n; ++t) {
    std::uint32_t lo = argStart_[t], hi = argStart_[t + 1];
    if (lo == hi)
      continue;
    for (std::uint32_t k = lo; k < hi; ++k) {
      auto &u = uses_[args_[k]];
      if (u.empty() || u.back() != t)
        u.push_back(t);
    }
    lookupOrInsert(t);
  }
}

void BoundedCongruence::instantiate() {
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> byHead;
  std::vector<std::vector<std::uint32_t>> bySort(sig_->sortCount());
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    Term t = terms_[i];
    bySort[t.sort().value].push_back(i);
    if (!t.isVariable())
      byHead[t.symbol().value].push_back(i);
  }

  using Binding = std::unordered_map<Term, Term, TermHash>;
  std::function<bool(Term, Term, Binding &)> match = [&](Term pat, Term u, Binding &b) {
    if (pat.isVariable()) {
      auto [it, fresh] = b.emplace(pat, u);
      return fresh ? pat.sort() == u.sort() : it->second == u;
    }
    if (u.isVariable() || pat.symbol() != u.symbol())
      return false;
    for (std::size_t k = 0; k < pat.args().size(); ++k)
      if (!match(pat.args()[k], u.args()[k], b))
        return false;
    return true;
  };
  // Instantiates without interning anything new.
  std::function<std::optional<Term>(Term, const Binding &)> lookup =
      [&](Term t, const Binding &b) -> std::optional<Term> {
    if (t.isVariable()) {
      auto it = b.find(t);
      if (it == b.end())
        return std::nullopt;
      return it->second;
    }
    std::vector<Term> args;
    for (Term a : t.args()) {
      auto v = lookup(a, b);
      if (!v)
        return std::nullopt;
      args.push_back(*v);
    }
    auto found = sig_->find(t.symbol(), args);
    if (!found || !index_.contains(found->node()))
      return std::nullopt;
    return found;
  };

  for (std::uint32_t k = 0; k < axioms_.size(); ++k) {
    const Equation &eq = axioms_[k];
    std::vector<Term> vl = variablesOf(eq.lhs), vr = variablesOf(eq.rhs);
    auto subset = [](const std::vector<Term> &a, const std::vector<Term> &b) {
      return std::all_of(a.begin(), a.end(), [&](Term x) {
        return std::find(b.begin(), b.end(), x) != b.end();
      });
    };
    bool fromLeft = subset(vr, vl) || !subset(vl, vr);
    Term pattern = fromLeft ? eq.lhs : eq.rhs;
    Term other = fromLeft ? eq.rhs : eq.lhs;
    std::vector<Term> open = variablesOf(other);
    std::vector<Term> patVars = variablesOf(pattern);
    std::erase_if(open, [&](Term x) {
      return std::find(patVars.begin(), patVars.end(), x) != patVars.end();
    });

    auto record = [&](const Binding &b) {
      auto l = lookup(eq.lhs, b);
      auto r = lookup(eq.rhs, b);
      if (!l || !r)
        return;
      std::vector<std::pair<Term, Term>> binding(b.begin(), b.end());
      std::sort(binding.begin(), binding.end(),
                [](const auto &x, const auto &y) { return x.first.id() < y.first.id(); });
      auto li = index_.at(l->node()), ri = index_.at(r->node());
      auto inst = static_cast<std::uint32_t>(instances_.size());
      instances_.push_back(Instance{k, std::move(binding), li, ri});
      pending_.push_back(Pending{li, ri, Justification{true, inst, li, ri}});
    };
    std::function<void(std::size_t, Binding &)> extend = [&](std::size_t i, Binding &b) {
      if (i == open.size()) {
        record(b);
        return;
      }
      for (std::uint32_t u : bySort[open[i].sort().value]) {
        b[open[i]] = terms_[u];
        extend(i + 1, b);
      }
      b.erase(open[i]);
    };

    const std::vector<std::uint32_t> *candidates;
    static const std::vector<std::uint32_t> kNone;
    if (pattern.isVariable()) {
      candidates = &bySort[pattern.sort().value];
    } else {
      auto it = byHead.find(pattern.symbol().value);
      candidates = it == byHead.end() ? &kNone : &it->second;
    }
    for (std::uint32_t u : *candidates) {
      Binding b;
      if (match(pattern, terms_[u], b))
        extend(0, b);
    }
  }
  report_.instances = instances_.size();
}

std::uint32_t BoundedCongruence::find(std::uint32_t x) const {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

std::size_t BoundedCongruence::signatureHash(std::uint32_t t) const {
  std::size_t h = terms_[t].symbol().value * 0x9e3779b97f4a7c15ULL;
  for (std::uint32_t k = argStart_[t]; k < argStart_[t + 1]; ++k)
    h = (h ^ find(args_[k])) * 0xff51afd7ed558ccdULL + k - argStart_[t];
  return h;
}

bool BoundedCongruence::sameSignature(std::uint32_t t, std::uint32_t u) const {
  if (terms_[t].symbol() != terms_[u].symbol())
    return false;
  std::uint32_t n = argStart_[t + 1] - argStart_[t];
  if (n != argStart_[u + 1] - argStart_[u])
    return false;
  for (std::uint32_t k = 0; k < n; ++k)
    if (find(args_[argStart_[t] + k]) != find(args_[argStart_[u] + k]))
      return false;
  return true;
}

std::optional<std::uint32_t> BoundedCongruence::lookupOrInsert(std::uint32_t t) {
  std::size_t h = signatureHash(t);
  auto [lo, hi] = signatures_.equal_range(h);
  bool present = false;
  for (auto it = lo; it != hi; ++it) {
    if (it->second == t) {
      present = true;
      continue;
    }
    if (sameSignature(t, it->second))
      return it->second;
  }
  if (!present)
    signatures_.emplace(h, t);
  return std::nullopt;
}

void BoundedCongruence::addProofEdge(std::uint32_t a, std::uint32_t b, Justification why) {
  // Re-root a's proof tree at a, then hang it below b.
  std::int64_t prev = -1;
  Justification prevWhy{};
  std::int64_t cur = a;
  while (cur != -1) {
    std::int64_t next = proofParent_[cur];
    Justification nextWhy = proofWhy_[cur];
    proofParent_[cur] = prev;
    proofWhy_[cur] = prevWhy;
    prev = cur;
    prevWhy = nextWhy;
    cur = next;
  }
  proofParent_[a] = b;
  proofWhy_[a] = why;
}

void BoundedCongruence::close() {
  std::size_t head = 0;
  while (head < pending_.size()) {
    Pending p = pending_[head++];
    std::uint32_t ra = find(p.a), rb = find(p.b);
    if (ra == rb)
      continue;
    if (report_.merges >= report_.budget.maxMerges) {
      report_.exhausted = true;
      break;
    }
    ++report_.merges;
    addProofEdge(p.a, p.b, p.why);
    if (classSize_[ra] > classSize_[rb])
      std::swap(ra, rb);
    parent_[ra] = rb;
    classSize_[rb] += classSize_[ra];
    for (std::uint32_t t : uses_[ra]) {
      if (auto u = lookupOrInsert(t); u && find(*u) != find(t))
        pending_.push_back(Pending{t, *u, Justification{false, 0, t, *u}});
    }
    auto &dst = uses_[rb];
    dst.insert(dst.end(), uses_[ra].begin(), uses_[ra].end());
    std::vector<std::uint32_t>().swap(uses_[ra]);
  }
  pending_.clear();
  pending_.shrink_to_fit();
}

bool BoundedCongruence::equivalent(Term a, Term b) const {
  auto ia = index_.find(a.node()), ib = index_.find(b.node());
  if (ia == index_.end() || ib == index_.end())
    return false;
  return find(ia->second) == find(ib->second);
}

std::uint32_t BoundedCongruence::classOf(Term t) const { return find(index_.at(t.node())); }

std::size_t BoundedCongruence::classCount() const {
  std::size_t n = 0;
  for (std::uint32_t i = 0; i < terms_.size(); ++i)
    n += find(i) == i;
  return n;
}

std::vector<std::vector<Term>> BoundedCongruence::classes() const {
  std::unordered_map<std::uint32_t, std::size_t> slot;
  std::vector<std::vector<Term>> out;
  for (std::uint32_t i = 0; i < terms_.size(); ++i) {
    auto [it, fresh] = slot.emplace(find(i), out.size());
    if (fresh)
      out.emplace_back();
    out[it->second].push_back(terms_[i]);
  }
  return out;
}

class TraceBuilder {
public:
  explicit TraceBuilder(const BoundedCongruence &cc) : cc_(cc), sig_(*cc.sig_) {}

  std::size_t prove(std::uint32_t x, std::uint32_t y) {
    if (auto it = memo_.find({x, y}); it != memo_.end())
      return it->second;
    std::size_t result;
    if (x == y) {
      result = emit(Rule::Refl, {}, eq(x, x));
    } else {
      // Both paths up to the lowest common ancestor in the proof forest.
      std::vector<std::uint32_t> up;
      std::unordered_map<std::uint32_t, std::size_t> depth;
      for (std::int64_t c = x; c != -1; c = cc_.proofParent_[c]) {
        depth.emplace(static_cast<std::uint32_t>(c), up.size());
        up.push_back(static_cast<std::uint32_t>(c));
      }
      std::vector<std::uint32_t> down;
      std::int64_t c = y;
      while (!depth.contains(static_cast<std::uint32_t>(c))) {
        down.push_back(static_cast<std::uint32_t>(c));
        c = cc_.proofParent_[c];
      }
      std::size_t lcaDepth = depth.at(static_cast<std::uint32_t>(c));
      std::vector<std::size_t> chain;
      for (std::size_t i = 0; i < lcaDepth; ++i)
        chain.push_back(edge(up[i], up[i + 1]));
      for (std::size_t i = down.size(); i-- > 0;) {
        std::uint32_t child = down[i];
        auto parent = static_cast<std::uint32_t>(cc_.proofParent_[child]);
        chain.push_back(flip(edge(child, parent)));
      }
      result = chain.front();
      for (std::size_t i = 1; i < chain.size(); ++i) {
        const Equation &l = trace_.steps[result].conclusion;
        const Equation &r = trace_.steps[chain[i]].conclusion;
        result = emit(Rule::Trans, {result, chain[i]}, makeEquation(l.lhs, r.rhs));
      }
    }
    memo_.emplace(std::make_pair(x, y), result);
    return result;
  }

  Trace take() { return std::move(trace_); }

private:
  Equation eq(std::uint32_t a, std::uint32_t b) const {
    return makeEquation(cc_.terms_[a], cc_.terms_[b]);
  }

  std::size_t emit(Rule r, std::vector<std::size_t> premises, Equation concl) {
    trace_.steps.push_back(TraceStep{r, std::move(premises), concl});
    return trace_.steps.size() - 1;
  }

  std::size_t flip(std::size_t step) {
    const Equation &e = trace_.steps[step].conclusion;
    return emit(Rule::Symm, {step}, makeEquation(e.rhs, e.lhs));
  }

  // Step concluding terms[child] ≈ terms[parent].
  std::size_t edge(std::uint32_t child, std::uint32_t) {
    const auto &why = cc_.proofWhy_[child];
    std::size_t base = why.axiom ? axiom(why.index) : congruence(why.a, why.b);
    return why.a == child ? base : flip(base);
  }

  std::size_t congruence(std::uint32_t t, std::uint32_t u) {
    std::vector<std::size_t> premises;
    std::uint32_t n = cc_.argStart_[t + 1] - cc_.argStart_[t];
    for (std::uint32_t k = 0; k < n; ++k)
      premises.push_back(prove(cc_.args_[cc_.argStart_[t] + k], cc_.args_[cc_.argStart_[u] + k]));
    return emit(Rule::Cong, std::move(premises), eq(t, u));
  }

  std::size_t axiom(std::uint32_t idx) {
    if (auto it = axiomMemo_.find(idx); it != axiomMemo_.end())
      return it->second;
    const auto &inst = cc_.instances_[idx];
    const Equation &schema = cc_.axioms_[inst.equation];
    std::size_t cur = emit(Rule::Ax, {}, schema);
    bool closedValues = std::all_of(inst.binding.begin(), inst.binding.end(),
                                    [](const auto &p) { return isClosed(p.second); });
    auto step = [&](Term x, Term r) {
      const Equation &e = trace_.steps[cur].conclusion;
      Equation next = makeEquation(substitute(sig_, e.lhs, x, r), substitute(sig_, e.rhs, x, r));
      cur = emit(Rule::Subst, {cur}, next);
    };
    if (closedValues) {
      for (const auto &[x, r] : inst.binding)
        step(x, r);
    } else {
      // Rename first so replacement terms cannot capture later variables.
      std::vector<Term> fresh;
      for (std::size_t i = 0; i < inst.binding.size(); ++i) {
        Term x = inst.binding[i].first;
        fresh.push_back(sig_.variable("#" + std::to_string(i), x.sort()));
        step(x, fresh.back());
      }
      for (std::size_t i = 0; i < inst.binding.size(); ++i)
        step(fresh[i], inst.binding[i].second);
    }
    axiomMemo_.emplace(idx, cur);
    return cur;
  }

  const BoundedCongruence &cc_;
  const Signature &sig_;
  Trace trace_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> memo_;
  std::unordered_map<std::uint32_t, std::size_t> axiomMemo_;
};

std::optional<Trace> BoundedCongruence::explain(Term a, Term b) const {
  if (!equivalent(a, b))
    return std::nullopt;
  TraceBuilder builder(*this);
  builder.prove(index_.at(a.node()), index_.at(b.node()));
  Trace t = builder.take();
  // The last emitted step concludes a ≈ b only if prove emitted it last;
  // memo hits can leave it earlier, so append a closing refl/trans if needed.
  Equation goal = makeEquation(a, b);
  if (!(t.conclusion() == goal)) {
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      if (t.steps[i].conclusion == goal) {
        // Re-emit as a trivial trans with refl so the goal is last.
        t.steps.push_back(TraceStep{Rule::Refl, {}, makeEquation(b, b)});
        t.steps.push_back(TraceStep{Rule::Trans, {i, t.steps.size() - 1}, goal});
        break;
      }
    }
  }
  return t;
}

Decision derives(const Signature &sig, std::span<const Equation> axioms, const Equation &goal,
                 Budget budget) {
  Term sides[] = {goal.lhs, goal.rhs};
  BoundedCongruence cc(sig, std::vector<Equation>(axioms.begin(), axioms.end()), budget, sides);
  if (auto trace = cc.explain(goal.lhs, goal.rhs))
    return Proved{std::move(*trace), cc.report()};
  return Unknown{cc.report()};
}

} // namespace catwb::msa
