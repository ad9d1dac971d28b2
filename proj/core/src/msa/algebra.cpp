#include "catwb/msa/algebra.hpp"

#include <functional>

namespace catwb::msa {

FinAlgebra::FinAlgebra(std::shared_ptr<const Signature> sig) : sig_(std::move(sig)) {
  carriers_.resize(sig_->sortCount());
  tables_.resize(sig_->symbolCount());
}

void FinAlgebra::setCarrier(SortId sort, std::vector<std::string> elementNames) {
  carriers_.at(sort.value) = std::move(elementNames);
}

void FinAlgebra::setCarrierSize(SortId sort, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(std::to_string(i));
  setCarrier(sort, std::move(names));
}

std::size_t FinAlgebra::tableSize(SymbolId f) const {
  std::size_t n = 1;
  for (SortId s : sig_->symbol(f).args)
    n *= carrierSize(s);
  return n;
}

std::size_t FinAlgebra::tableIndex(SymbolId f, std::span<const int> args) const {
  const auto &sorts = sig_->symbol(f).args;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < sorts.size(); ++i)
    idx = idx * carrierSize(sorts[i]) + static_cast<std::size_t>(args[i]);
  return idx;
}

void FinAlgebra::setTable(SymbolId f, std::vector<int> table) {
  tables_.at(f.value) = std::move(table);
}

void FinAlgebra::setEntry(SymbolId f, std::span<const int> args, int value) {
  auto &t = tables_.at(f.value);
  if (t.size() != tableSize(f))
    t.assign(tableSize(f), kUndefined);
  t.at(tableIndex(f, args)) = value;
}

std::optional<int> FinAlgebra::apply(SymbolId f, std::span<const int> args) const {
  const auto &t = tables_.at(f.value);
  std::size_t idx = tableIndex(f, args);
  if (idx >= t.size() || t[idx] == kUndefined)
    return std::nullopt;
  return t[idx];
}

std::optional<int> FinAlgebra::evaluate(Term t, const Assignment &env) const {
  if (t.isVariable()) {
    auto it = env.find(t);
    if (it == env.end())
      return std::nullopt;
    return it->second;
  }
  std::vector<int> args;
  args.reserve(t.args().size());
  for (Term a : t.args()) {
    auto v = evaluate(a, env);
    if (!v)
      return std::nullopt;
    args.push_back(*v);
  }
  return apply(t.symbol(), args);
}

std::vector<std::string> FinAlgebra::wellFormednessErrors() const {
  std::vector<std::string> errors;
  for (std::uint32_t f = 0; f < sig_->symbolCount(); ++f) {
    const FunctionSymbol &sym = sig_->symbol(SymbolId{f});
    const auto &t = tables_[f];
    if (t.size() != tableSize(SymbolId{f})) {
      errors.push_back("table of " + sym.name + " has " + std::to_string(t.size()) +
                       " entries, expected " + std::to_string(tableSize(SymbolId{f})));
      continue;
    }
    for (int v : t) {
      if (v != kUndefined && (v < 0 || static_cast<std::size_t>(v) >= carrierSize(sym.result))) {
        errors.push_back("table of " + sym.name + " leaves its result carrier");
        break;
      }
    }
  }
  return errors;
}

bool FinAlgebra::isTotal() const {
  for (const auto &t : tables_)
    for (int v : t)
      if (v == kUndefined)
        return false;
  return wellFormednessErrors().empty();
}

std::optional<FinAlgebra::Assignment> findViolation(const FinAlgebra &alg, const Equation &eq) {
  std::vector<Term> vars = variablesOf(eq.lhs);
  variablesOf(eq.rhs, vars);
  FinAlgebra::Assignment env;
  std::optional<FinAlgebra::Assignment> witness;

  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == vars.size()) {
      if (alg.evaluate(eq.lhs, env) != alg.evaluate(eq.rhs, env)) {
        witness = env;
        return false;
      }
      return true;
    }
    std::size_t n = alg.carrierSize(vars[i].sort());
    for (std::size_t e = 0; e < n; ++e) {
      env[vars[i]] = static_cast<int>(e);
      if (!go(i + 1))
        return false;
    }
    env.erase(vars[i]);
    return true;
  };
  go(0);
  return witness;
}

bool satisfies(const FinAlgebra &alg, const Equation &eq) { return !findViolation(alg, eq); }

std::optional<std::string> homomorphismViolation(const FinAlgebra &from, const FinAlgebra &to,
                                                 const AlgebraHom &phi) {
  const Signature &sig = from.signature();
  for (std::uint32_t s = 0; s < sig.sortCount(); ++s) {
    if (phi.components.size() <= s ||
        phi.components[s].size() != from.carrierSize(SortId{s}))
      return "component at sort " + sig.sortName(SortId{s}) + " has the wrong domain";
  }
  for (std::uint32_t f = 0; f < sig.symbolCount(); ++f) {
    const FunctionSymbol &sym = sig.symbol(SymbolId{f});
    std::vector<int> args(sym.args.size(), 0);
    std::vector<int> mapped(sym.args.size());
    bool empty = false;
    for (SortId s : sym.args)
      empty = empty || from.carrierSize(s) == 0;
    if (empty)
      continue;
    while (true) {
      for (std::size_t i = 0; i < args.size(); ++i)
        mapped[i] = phi.components[sym.args[i].value][args[i]];
      auto lhs = from.apply(SymbolId{f}, args);
      auto rhs = to.apply(SymbolId{f}, mapped);
      std::optional<int> lhsMapped;
      if (lhs)
        lhsMapped = phi.components[sym.result.value][*lhs];
      if (lhsMapped != rhs)
        return "square for " + sym.name + " fails";
      std::size_t k = args.size();
      bool done = true;
      while (k > 0) {
        --k;
        if (static_cast<std::size_t>(++args[k]) < from.carrierSize(sym.args[k])) {
          done = false;
          break;
        }
        args[k] = 0;
      }
      if (done)
        break;
    }
  }
  return std::nullopt;
}

} // namespace catwb::msa
