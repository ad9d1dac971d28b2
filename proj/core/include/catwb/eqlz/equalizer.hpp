#pragma once

// Equalizers as essentially algebraic structure: a partial symbol
// eql : A -> E whose formation is guarded by derivability of f(t) ≈ g(t).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catwb/msa/algebra.hpp"
#include "catwb/msa/derivation.hpp"
#include "catwb/theories/theory.hpp"

namespace catwb::eqlz {

using fincat::ConeCollection;
using fincat::FinCategory;
using fincat::FinFunctor;
using fincat::MorId;
using fincat::ObjId;

/// E --e--> A ==f,g==> B.
struct EqualizerCone {
  std::string name;
  MorId e = 0, f = 0, g = 0;
};

struct EqualizerCheck {
  bool ok = true;
  std::string witness;
  explicit operator bool() const { return ok; }
};
/// f∘e = g∘e and every m : X -> A with f∘m = g∘m factors uniquely as e∘u.
EqualizerCheck isEqualizer(const FinCategory &cat, const EqualizerCone &cone);

struct FixpointBounds {
  std::size_t maxTermSize = 6;
  std::size_t maxRounds = 8;
  std::size_t maxMerges = 100000;
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t typable = 0;   // closed terms in the universe
  std::size_t admitted = 0;  // eql(t) terms admitted so far
  std::size_t classes = 0;   // congruence classes
  std::size_t merges = 0;
  bool exhausted = false;
};

/// The bounded alternating fixpoint. Round 1 has no eql terms; round r
/// admits eql(t) when f(t) ≈ g(t) held at round r-1, then closes the
/// universe under the base equations, beta instances e(eql(t)) ≈ t (closed,
/// one per admitted term) and eta x ≈ eql(e(x)).
class EssentialTheory {
public:
  const theories::Theory &base() const { return theory_; }
  const msa::Signature &sig() const { return *theory_.sig; }
  const std::vector<EqualizerCone> &cones() const { return cones_; }
  msa::SymbolId eqlSymbol(std::size_t cone) const { return eql_.at(cone); }

  const std::vector<RoundRecord> &transcript() const { return transcript_; }
  bool fixpoint() const { return fixpoint_; }
  /// Stopped by the round cap or the merge budget.
  bool truncated() const { return truncated_; }
  /// Each round's universe and congruence contain the previous round's.
  bool monotone() const { return monotone_; }
  const FixpointBounds &bounds() const { return bounds_; }

  const std::vector<msa::Term> &typable() const { return congruence_->universe(); }
  bool isTypable(msa::Term t) const { return congruence_->contains(t); }
  const std::vector<msa::Term> &admitted() const { return admitted_; }
  bool derivable(msa::Term s, msa::Term t) const { return congruence_->equivalent(s, t); }
  const msa::BoundedCongruence &congruence() const { return *congruence_; }

  /// Base equations, beta instances and eta axioms.
  const std::vector<msa::Equation> &axioms() const { return axioms_; }
  const std::vector<msa::Equation> &betaInstances() const { return beta_; }
  const std::vector<msa::Equation> &etaAxioms() const { return eta_; }
  /// The derivation of f(t) ≈ g(t) recorded when eql(t) was admitted.
  const msa::Trace &guard(std::size_t admittedIndex) const { return guards_.at(admittedIndex); }

  std::string describeTranscript() const;

private:
  friend EssentialTheory buildEqualizerTheory(std::shared_ptr<const FinCategory>,
                                              const ConeCollection &,
                                              std::vector<EqualizerCone>,
                                              const std::optional<FinFunctor> &, FixpointBounds);
  theories::Theory theory_;
  std::vector<EqualizerCone> cones_;
  std::vector<msa::SymbolId> eql_;
  FixpointBounds bounds_;
  std::vector<RoundRecord> transcript_;
  bool fixpoint_ = false;
  bool truncated_ = false;
  bool monotone_ = true;
  std::vector<msa::Term> admitted_;
  std::vector<msa::Trace> guards_;
  std::vector<msa::Equation> axioms_, beta_, eta_;
  std::shared_ptr<msa::BoundedCongruence> congruence_;
};

/// Throws theories::InvalidCone when a product cone fails its universal
/// property and std::invalid_argument when an equalizer cone does.
EssentialTheory buildEqualizerTheory(std::shared_ptr<const FinCategory> cat,
                                     const ConeCollection &products,
                                     std::vector<EqualizerCone> equalizers,
                                     const std::optional<FinFunctor> &f = std::nullopt,
                                     FixpointBounds bounds = {});

/// The algebra of G over the equalizer signature; eql(x) is the first y
/// with G(e)(y) = x when G(f)(x) = G(g)(x), and undefined otherwise.
msa::FinAlgebra functorToPartialAlgebra(const EssentialTheory &t, const FinFunctor &g);

/// eql is defined exactly on {x : f(x) = g(x)}, e(eql(x)) = x there, and
/// eql(e(y)) = y for every y.
EqualizerCheck partialAlgebraCheck(const EssentialTheory &t, const msa::FinAlgebra &alg,
                                   std::size_t cone);

/// G(e) is a bijection onto {x : G(f)(x) = G(g)(x)}.
EqualizerCheck preservesEqualizer(const FinFunctor &g, const EqualizerCone &cone);

/// Every congruence class of the fixpoint evaluates to a single defined
/// element in G's partial algebra; otherwise the first offending pair.
std::optional<std::string> classViolation(const EssentialTheory &t, const FinFunctor &g);

struct Correspondence {
  bool preserves = false;
  bool algebraPasses = false;
  bool roundTrip = false; // algebra -> functor gives back G's tables
  std::string witness;
  bool agree() const { return preserves == algebraPasses; }
};
/// Both sides of: G preserves every equalizer ⇔ its partial algebra passes.
Correspondence correspondenceEq(const EssentialTheory &t, const FinFunctor &g);

} // namespace catwb::eqlz
