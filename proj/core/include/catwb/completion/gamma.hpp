#pragma once

// The extension γ̂ : L(F) -> G of a transformation γ : F -> G into a
// cone-preserving G, and the action of L on transformations.

#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "catwb/theories/theory.hpp"

namespace catwb::completion {

using fincat::FinFunctor;
using fincat::NatTrans;
using theories::Theory;

class NotConePreserving : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// γ̂ by structural recursion: constants through γ, morphism symbols
/// through G, pair through the inverse of G(C) ≅ G(A)×G(B), unit to the
/// unique element.
class GammaHat {
public:
  /// Throws NotConePreserving when G fails a cone of the theory, and
  /// std::invalid_argument when γ is not a natural transformation F -> G
  /// (unless requireNatural is false, for mutation tests).
  GammaHat(const Theory &theory, FinFunctor g, NatTrans gamma, bool requireNatural = true);

  /// The element of G(sort of t).
  int operator()(msa::Term t) const;
  std::string show(msa::Term t) const;

  const FinFunctor &target() const { return g_; }
  const NatTrans &gamma() const { return gamma_; }

private:
  const Theory *theory_;
  FinFunctor g_;
  NatTrans gamma_;
  msa::FinAlgebra alg_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<msa::Term, int, msa::TermHash> memo_;
};

/// L(α) on a closed term over `from`: constants (A, a) become (A, α_A(a)),
/// every other symbol is kept. Both theories must share category and cones.
msa::Term mapL(const Theory &from, const Theory &to, const NatTrans &alpha, msa::Term t);

} // namespace catwb::completion
