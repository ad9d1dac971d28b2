#pragma once

#include <functional>
#include <span>
#include <vector>

#include "catwb/msa/term.hpp"

namespace catwb::msa {

/// All well-sorted terms up to a node-count bound, bucketed by size and sort.
///
/// Order is size-lexicographic: by size, then atoms (in the order given)
/// before symbols, symbols in declaration order, then the argument-size
/// composition, then argument terms in their own enumeration order.
class TermLayers {
public:
  /// `atoms` are extra leaves (normally variables). `admit` may veto an
  /// application before it is interned; the layers stay subterm-closed.
  TermLayers(const Signature &sig, std::size_t maxSize, std::span<const Term> atoms = {},
             std::function<bool(SymbolId, std::span<const Term>)> admit = {});

  std::size_t maxSize() const { return maxSize_; }
  /// Terms of exactly `size` nodes and the given sort.
  std::span<const Term> at(std::size_t size, SortId sort) const;
  /// All terms of a sort, in enumeration order.
  std::vector<Term> ofSort(SortId sort) const;
  /// Every term, in enumeration order.
  std::vector<Term> all() const;
  std::size_t count() const;

private:
  std::size_t maxSize_;
  std::size_t sortCount_;
  std::vector<std::vector<std::vector<Term>>> layers_; // [size][sort]
};

/// The well-sorted terms of `sort` with at most `maxSize` nodes. With
/// `allowVariables`, one variable per sort (named "x") joins the leaves.
std::vector<Term> enumerateTerms(const Signature &sig, SortId sort, std::size_t maxSize,
                                 bool allowVariables);

} // namespace catwb::msa
