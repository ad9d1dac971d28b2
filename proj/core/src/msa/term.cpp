#include "catwb/msa/term.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_set>

namespace catwb::msa {

bool Term::isVariable() const { return node_->variable; }
SortId Term::sort() const { return node_->sort; }
SymbolId Term::symbol() const { return node_->symbol; }
const std::string &Term::variableName() const { return node_->name; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::size() const { return node_->size; }
std::uint64_t Term::id() const { return node_->id; }

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t nodeHash(bool variable, SortId sort, SymbolId symbol,
                     std::string_view name, std::span<const Term> args) {
  std::size_t h = variable ? 0x51ed27 : 0x2545f4;
  h = mix(h, sort.value);
  if (variable) {
    h = mix(h, std::hash<std::string_view>{}(name));
  } else {
    h = mix(h, symbol.value);
    for (Term a : args)
      h = mix(h, static_cast<std::size_t>(a.id()));
  }
  return h;
}

} // namespace

class TermArena {
public:
  Term intern(bool variable, SortId sort, SymbolId symbol, std::string_view name,
              std::span<const Term> args) {
    std::size_t h = nodeHash(variable, sort, symbol, name, args);
    std::lock_guard lock(mutex_);
    if (const TermNode *hit = lookup(h, variable, sort, symbol, name, args))
      return Term(hit);
    TermNode &node = nodes_.emplace_back();
    node.variable = variable;
    node.sort = sort;
    node.symbol = symbol;
    node.name = std::string(name);
    node.args.assign(args.begin(), args.end());
    node.size = 1;
    for (Term a : args)
      node.size += a.size();
    node.id = nodes_.size() - 1;
    node.hash = h;
    index_.emplace(h, &node);
    return Term(&node);
  }

  std::optional<Term> find(SortId sort, SymbolId symbol, std::span<const Term> args) const {
    std::size_t h = nodeHash(false, sort, symbol, {}, args);
    std::lock_guard lock(mutex_);
    if (const TermNode *hit = lookup(h, false, sort, symbol, {}, args))
      return Term(hit);
    return std::nullopt;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return nodes_.size();
  }

private:
  const TermNode *lookup(std::size_t h, bool variable, SortId sort, SymbolId symbol,
                         std::string_view name, std::span<const Term> args) const {
    auto [lo, hi] = index_.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      const TermNode *n = it->second;
      if (n->variable != variable || n->sort != sort)
        continue;
      if (variable) {
        if (n->name == name)
          return n;
        continue;
      }
      if (n->symbol == symbol && std::equal(n->args.begin(), n->args.end(),
                                            args.begin(), args.end()))
        return n;
    }
    return nullptr;
  }

  mutable std::mutex mutex_;
  std::deque<TermNode> nodes_;
  std::unordered_multimap<std::size_t, const TermNode *> index_;
};

Signature::Signature() : arena_(std::make_unique<TermArena>()) {}
Signature::~Signature() = default;

SortId Signature::addSort(std::string name) {
  if (sortIndex_.contains(name))
    throw std::invalid_argument("duplicate sort '" + name + "'");
  SortId id{static_cast<std::uint32_t>(sortNames_.size())};
  sortIndex_.emplace(name, id);
  sortNames_.push_back(std::move(name));
  return id;
}

SymbolId Signature::addSymbol(std::string name, std::vector<SortId> args, SortId result) {
  if (symbolIndex_.contains(name))
    throw std::invalid_argument("duplicate function symbol '" + name + "'");
  auto known = [&](SortId s) { return s.value < sortNames_.size(); };
  if (!known(result) || !std::all_of(args.begin(), args.end(), known))
    throw std::invalid_argument("symbol '" + name + "' uses an undeclared sort");
  SymbolId id{static_cast<std::uint32_t>(symbols_.size())};
  symbolIndex_.emplace(name, id);
  symbols_.push_back(FunctionSymbol{std::move(name), std::move(args), result});
  return id;
}

std::optional<SortId> Signature::findSort(std::string_view name) const {
  auto it = sortIndex_.find(std::string(name));
  if (it == sortIndex_.end())
    return std::nullopt;
  return it->second;
}

std::optional<SymbolId> Signature::findSymbol(std::string_view name) const {
  auto it = symbolIndex_.find(std::string(name));
  if (it == symbolIndex_.end())
    return std::nullopt;
  return it->second;
}

Term Signature::variable(std::string_view name, SortId sort) const {
  if (sort.value >= sortNames_.size())
    throw std::invalid_argument("variable of undeclared sort");
  return arena_->intern(true, sort, SymbolId{}, name, {});
}

Term Signature::apply(SymbolId f, std::span<const Term> args) const {
  const FunctionSymbol &sym = symbol(f);
  if (sym.args.size() != args.size())
    throw IllSorted(sym.name + " expects " + std::to_string(sym.args.size()) +
                        " argument(s), got " + std::to_string(args.size()),
                    {});
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].sort() != sym.args[i])
      throw IllSorted("argument " + std::to_string(i + 1) + " of " + sym.name +
                          " has sort " + sortName(args[i].sort()) + ", expected " +
                          sortName(sym.args[i]),
                      {i});
  }
  return arena_->intern(false, sym.result, f, {}, args);
}

std::optional<Term> Signature::find(SymbolId f, std::span<const Term> args) const {
  return arena_->find(symbol(f).result, f, args);
}

std::size_t Signature::internedCount() const { return arena_->size(); }

std::string Signature::show(Term t) const {
  if (t.isVariable())
    return t.variableName();
  std::string out = symbol(t.symbol()).name;
  if (t.args().empty())
    return out;
  out += '(';
  bool first = true;
  for (Term a : t.args()) {
    if (!first)
      out += ", ";
    first = false;
    out += show(a);
  }
  out += ')';
  return out;
}

Equation makeEquation(Term lhs, Term rhs) {
  if (lhs.sort() != rhs.sort())
    throw SortMismatch("equation sides have different sorts");
  return Equation{lhs, rhs, lhs.sort()};
}

std::string show(const Signature &sig, const Equation &eq) {
  return sig.show(eq.lhs) + " ≈ " + sig.show(eq.rhs) + " : " + sig.sortName(eq.sort);
}

namespace {

SortId sortOfAt(const PreTerm &t, const Signature &sig, std::vector<std::size_t> &path) {
  if (const auto *v = std::get_if<PreTerm::Var>(&t.node))
    return v->sort;
  const auto &app = std::get<PreTerm::App>(t.node);
  const FunctionSymbol &sym = sig.symbol(app.symbol);
  if (sym.args.size() != app.args.size())
    throw IllSorted(sym.name + " expects " + std::to_string(sym.args.size()) +
                        " argument(s), got " + std::to_string(app.args.size()),
                    path);
  for (std::size_t i = 0; i < app.args.size(); ++i) {
    path.push_back(i);
    SortId got = sortOfAt(app.args[i], sig, path);
    path.pop_back();
    if (got != sym.args[i])
      throw IllSorted("argument " + std::to_string(i + 1) + " of " + sym.name +
                          " has sort " + sig.sortName(got) + ", expected " +
                          sig.sortName(sym.args[i]),
                      path);
  }
  return sym.result;
}

Term elaborateChecked(const PreTerm &t, const Signature &sig) {
  if (const auto *v = std::get_if<PreTerm::Var>(&t.node))
    return sig.variable(v->name, v->sort);
  const auto &app = std::get<PreTerm::App>(t.node);
  std::vector<Term> args;
  args.reserve(app.args.size());
  for (const PreTerm &a : app.args)
    args.push_back(elaborateChecked(a, sig));
  return sig.apply(app.symbol, args);
}

} // namespace

SortId sortOf(const PreTerm &t, const Signature &sig) {
  std::vector<std::size_t> path;
  return sortOfAt(t, sig, path);
}

Term elaborate(const PreTerm &t, const Signature &sig) {
  sortOf(t, sig);
  return elaborateChecked(t, sig);
}

Term substitute(const Signature &sig, Term s,
                const std::unordered_map<Term, Term, TermHash> &subst) {
  for (const auto &[x, r] : subst) {
    if (!x.isVariable())
      throw std::invalid_argument("substitution domain must be variables");
    if (x.sort() != r.sort())
      throw SortMismatch("cannot substitute a term of sort " + sig.sortName(r.sort()) +
                         " for variable " + x.variableName() + " of sort " +
                         sig.sortName(x.sort()));
  }
  std::unordered_map<Term, Term, TermHash> memo;
  auto go = [&](auto &&self, Term t) -> Term {
    if (t.isVariable()) {
      auto it = subst.find(t);
      return it == subst.end() ? t : it->second;
    }
    if (t.args().empty())
      return t;
    if (auto it = memo.find(t); it != memo.end())
      return it->second;
    std::vector<Term> args;
    args.reserve(t.args().size());
    bool changed = false;
    for (Term a : t.args()) {
      args.push_back(self(self, a));
      changed = changed || args.back() != a;
    }
    Term out = changed ? sig.apply(t.symbol(), args) : t;
    memo.emplace(t, out);
    return out;
  };
  return go(go, s);
}

Term substitute(const Signature &sig, Term s, Term x, Term r) {
  return substitute(sig, s, std::unordered_map<Term, Term, TermHash>{{x, r}});
}

void variablesOf(Term t, std::vector<Term> &out) {
  if (t.isVariable()) {
    if (std::find(out.begin(), out.end(), t) == out.end())
      out.push_back(t);
    return;
  }
  for (Term a : t.args())
    variablesOf(a, out);
}

std::vector<Term> variablesOf(Term t) {
  std::vector<Term> out;
  variablesOf(t, out);
  return out;
}

bool isClosed(Term t) {
  if (t.isVariable())
    return false;
  return std::all_of(t.args().begin(), t.args().end(), isClosed);
}

std::optional<Term> subtermAt(Term t, std::span<const std::size_t> path) {
  for (std::size_t i : path) {
    if (t.isVariable() || i >= t.args().size())
      return std::nullopt;
    t = t.args()[i];
  }
  return t;
}

std::optional<std::vector<std::size_t>> findOccurrence(Term t, Term sub) {
  if (t == sub)
    return std::vector<std::size_t>{};
  if (t.isVariable())
    return std::nullopt;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (auto p = findOccurrence(t.args()[i], sub)) {
      p->insert(p->begin(), i);
      return p;
    }
  }
  return std::nullopt;
}

Term transport(Term t, const Signature &from, const Signature &to) {
  if (t.isVariable()) {
    auto s = to.findSort(from.sortName(t.sort()));
    if (!s)
      throw std::invalid_argument("sort " + from.sortName(t.sort()) + " missing in target");
    return to.variable(t.variableName(), *s);
  }
  const std::string &name = from.symbol(t.symbol()).name;
  auto f = to.findSymbol(name);
  if (!f)
    throw std::invalid_argument("symbol " + name + " missing in target");
  std::vector<Term> args;
  for (Term a : t.args())
    args.push_back(transport(a, from, to));
  return to.apply(*f, args);
}

} // namespace catwb::msa
