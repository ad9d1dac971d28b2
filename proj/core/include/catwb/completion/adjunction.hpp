#pragma once

// Checks of the universal arrow η : F -> L(F) against a concrete G and γ.

#include <cstdint>
#include <string>
#include <vector>

#include "catwb/completion/reflected.hpp"

namespace catwb::completion {

struct UniversalPropertyReport {
  bool unitLaw = true; // γ̂∘η = γ
  std::string unitWitness;
  bool naturality = true; // γ̂(f(t)) = G(f)(γ̂(t))
  std::string naturalityWitness;
  bool uniqueness = true; // every natural h with h∘η = γ agrees with γ̂
  std::string uniquenessWitness;

  std::size_t samples = 0;
  std::size_t classes = 0;
  std::size_t constraints = 0;
  std::size_t solutions = 0;
  bool searchExhausted = false;

  bool ok() const { return unitLaw && naturality && uniqueness; }
  std::string describe() const;
};

/// Up to `count` distinct closed terms of size <= maxSize, drawn uniformly
/// with a seeded generator. Deterministic for a given seed.
std::vector<msa::Term> sampleTerms(const ReflectedPresheaf &r, std::size_t count,
                                   std::size_t maxSize, std::uint64_t seed);

/// Adds every subterm, every constant, and the projections of every apex
/// term, recursively.
std::vector<msa::Term> closeSamples(const ReflectedPresheaf &r, std::vector<msa::Term> samples);

/// Checks the unit law on all constants, naturality on samples × morphisms,
/// and uniqueness by solving the assignment problem over sample classes
/// (grouped by normal form) with constraints h(f(t)) = G(f)(h(t)) whenever
/// f(t) is sampled, and h(η(a)) = γ(a). γ̂ is built from `hatFrom` when
/// given (to check a fixed γ̂ against another γ), else from γ. Throws as
/// GammaHat.
UniversalPropertyReport checkUniversalProperty(const ReflectedPresheaf &r, const FinFunctor &g,
                                               const NatTrans &gamma,
                                               const std::vector<msa::Term> &samples,
                                               const NatTrans *hatFrom = nullptr,
                                               std::size_t searchNodes = 1'000'000);

} // namespace catwb::completion
