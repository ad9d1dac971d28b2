#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "catwb/fincat/category.hpp"

namespace catwb::fincat {

/// Finite sets {0..n-1} for n <= maxCard and all functions between them,
/// with composition computed from the functions. Objects are n0, n1, ...;
/// a morphism is named m<a>_<b>_<values> (the empty function has no
/// values part).
FinCategory finSetSkeleton(int maxCard);

/// Sets of the given distinct sizes and all functions between them, named
/// as in finSetSkeleton.
FinCategory finSetCategory(const std::vector<int> &cardinalities);

/// finSetSkeleton(2) with the conventional names: objects n0, n1, n2;
/// morphisms id0, e01, e02, id1, inl, inr, t21, id2, swap, c0, c1 (inl and
/// inr pick 0 and 1, t21 collapses, c0 and c1 are the constant maps).
FinCategory delta();

/// The poset on `objects` generated by the given relations (reflexive,
/// transitive closure); one morphism a<=b named <a>_<b>.
FinCategory posetCategory(const std::vector<std::string> &objects,
                          const std::vector<std::pair<int, int>> &leq);

} // namespace catwb::fincat
