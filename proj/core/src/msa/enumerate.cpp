#include "catwb/msa/enumerate.hpp"

#include <stdexcept>

namespace catwb::msa {

namespace {

// Calls `visit` with every composition of `total` into `parts` positive
// summands, in lexicographic order.
template <class Visit>
void forEachComposition(std::size_t total, std::size_t parts, std::vector<std::size_t> &acc,
                        Visit &&visit) {
  if (parts == 0) {
    if (total == 0)
      visit(acc);
    return;
  }
  if (total < parts)
    return;
  std::size_t maxFirst = total - (parts - 1);
  for (std::size_t first = 1; first <= maxFirst; ++first) {
    acc.push_back(first);
    forEachComposition(total - first, parts - 1, acc, visit);
    acc.pop_back();
  }
}

} // namespace

TermLayers::TermLayers(const Signature &sig, std::size_t maxSize, std::span<const Term> atoms,
                       std::function<bool(SymbolId, std::span<const Term>)> admit)
    : maxSize_(maxSize), sortCount_(sig.sortCount()) {
  if (maxSize == 0)
    throw std::invalid_argument("term size bound must be at least 1");
  layers_.assign(maxSize + 1, std::vector<std::vector<Term>>(sortCount_));

  for (Term a : atoms)
    layers_[1][a.sort().value].push_back(a);

  std::vector<Term> args;
  std::vector<std::size_t> sizes;
  for (std::size_t n = 1; n <= maxSize; ++n) {
    for (std::uint32_t f = 0; f < sig.symbolCount(); ++f) {
      const FunctionSymbol &sym = sig.symbol(SymbolId{f});
      std::size_t arity = sym.args.size();
      if ((arity == 0) != (n == 1))
        continue;
      auto &out = layers_[n][sym.result.value];
      if (arity == 0) {
        if (!admit || admit(SymbolId{f}, {}))
          out.push_back(sig.constant(SymbolId{f}));
        continue;
      }
      forEachComposition(n - 1, arity, sizes, [&](const std::vector<std::size_t> &parts) {
        // Odometer over the argument buckets.
        std::vector<std::span<const Term>> pools;
        for (std::size_t i = 0; i < arity; ++i) {
          pools.push_back(layers_[parts[i]][sym.args[i].value]);
          if (pools.back().empty())
            return;
        }
        std::vector<std::size_t> idx(arity, 0);
        args.resize(arity);
        while (true) {
          for (std::size_t i = 0; i < arity; ++i)
            args[i] = pools[i][idx[i]];
          if (!admit || admit(SymbolId{f}, args))
            out.push_back(sig.apply(SymbolId{f}, args));
          std::size_t k = arity;
          while (k > 0) {
            --k;
            if (++idx[k] < pools[k].size())
              break;
            idx[k] = 0;
            if (k == 0)
              return;
          }
        }
      });
    }
  }
}

std::span<const Term> TermLayers::at(std::size_t size, SortId sort) const {
  if (size == 0 || size > maxSize_)
    return {};
  return layers_[size][sort.value];
}

std::vector<Term> TermLayers::ofSort(SortId sort) const {
  std::vector<Term> out;
  for (std::size_t n = 1; n <= maxSize_; ++n)
    out.insert(out.end(), layers_[n][sort.value].begin(), layers_[n][sort.value].end());
  return out;
}

std::vector<Term> TermLayers::all() const {
  std::vector<Term> out;
  for (std::size_t n = 1; n <= maxSize_; ++n)
    for (const auto &bucket : layers_[n])
      out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

std::size_t TermLayers::count() const {
  std::size_t total = 0;
  for (std::size_t n = 1; n <= maxSize_; ++n)
    for (const auto &bucket : layers_[n])
      total += bucket.size();
  return total;
}

std::vector<Term> enumerateTerms(const Signature &sig, SortId sort, std::size_t maxSize,
                                 bool allowVariables) {
  std::vector<Term> atoms;
  if (allowVariables)
    for (std::uint32_t s = 0; s < sig.sortCount(); ++s)
      atoms.push_back(sig.variable("x", SortId{s}));
  return TermLayers(sig, maxSize, atoms).ofSort(sort);
}

} // namespace catwb::msa
