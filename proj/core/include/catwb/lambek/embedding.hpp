#pragma once

// The Yoneda embedding against chosen coproducts, and the Lambek embedding
// into product-preserving presheaves.
//
// Everything is stated for a base category 𝒜. Presheaves are functors on
// opposite(𝒜), and a chosen coproduct A+B of 𝒜 is a product cone of
// opposite(𝒜) with apex A+B, fst = inl and snd = inr.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catwb/completion/reflected.hpp"
#include "catwb/fincat/functor.hpp"
#include "catwb/verdict.hpp"

namespace catwb::lambek {

using completion::ReflectedPresheaf;
using fincat::ConeCollection;
using fincat::FinCategory;
using fincat::FinFunctor;
using fincat::MorId;
using fincat::NatTrans;
using fincat::ObjId;

class EmbeddingContext {
public:
  /// `cones` are cones of opposite(base). Throws theories::InvalidCone when
  /// one is not a product there, and std::invalid_argument when the base
  /// category fails validation.
  EmbeddingContext(std::shared_ptr<const FinCategory> base, ConeCollection cones);

  const FinCategory &base() const { return *base_; }
  std::shared_ptr<const FinCategory> op() const { return op_; }
  const ConeCollection &cones() const { return cones_; }
  /// The first binary cone with the given factors.
  std::optional<std::size_t> coneFor(ObjId a, ObjId b) const;
  /// y(a) on opposite(base), named y(a).
  FinFunctor y(ObjId a) const;

private:
  std::shared_ptr<const FinCategory> base_;
  std::shared_ptr<const FinCategory> op_;
  ConeCollection cones_;
};

struct CounterexampleCandidate {
  NatTrans f;
  bool invertsCopairing = false;
  std::string witness; // an element moved by f∘[y(inl), y(inr)]
};

struct CounterexampleReport {
  ObjId object = 0;
  ObjId sum = 0;
  std::size_t yonedaCount = 0; // |Hom(I+I, I)| + |Hom(I+I, I)|
  std::vector<CounterexampleCandidate> candidates;
  /// True when no candidate inverts the copairing.
  bool counterexample = false;
  std::string summary;
};

/// Every natural f : y(I+I) -> y(I)⊔y(I), composed with [y(inl), y(inr)].
/// Throws std::invalid_argument when no cone I+I is chosen.
CounterexampleReport yonedaCounterexample(const EmbeddingContext &ctx, ObjId i);
/// As above with an explicit copairing; throws std::invalid_argument when
/// it is not a transformation y(I)⊔y(I) -> y(I+I).
CounterexampleReport yonedaCounterexample(const EmbeddingContext &ctx, ObjId i,
                                          const NatTrans &copairing);

struct LambekImage {
  FinFunctor functor;
  std::string note;
};
/// ŷ(A): y(A), checked to preserve the chosen cones.
LambekImage lambekEmbed(const EmbeddingContext &ctx, ObjId a);
/// Throws completion::NotConePreserving with a witness unless F preserves
/// the chosen cones.
void requireConePreserving(const EmbeddingContext &ctx, const FinFunctor &f);

struct SubcategoryCoproduct {
  fincat::Coproduct presheaf; // y(A) ⊔ y(B)
  std::shared_ptr<ReflectedPresheaf> reflected;

  /// η∘inl and η∘inr on m : X -> A (resp. B) in the base.
  msa::Term inl(ObjId x, int m) const;
  msa::Term inr(ObjId x, int m) const;
};
SubcategoryCoproduct subcategoryCoproduct(const EmbeddingContext &ctx, ObjId a, ObjId b,
                                          completion::EngineConfig config = {});

struct IsoCheck {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::size_t cases = 0;
  std::string witness;
};

struct ObjectBijection {
  ObjId object;
  std::size_t count = 0; // |Hom(X, A+B)|
  bool bijective = true;
};

struct ComparisonIso {
  ObjId a = 0, b = 0, sum = 0;
  std::vector<ObjectBijection> perObject;
  /// gamma-natural, psi-natural, phi-psi, psi-phi-eta, round-trip.
  std::vector<IsoCheck> checks;
  std::size_t roundTripTerms = 0;

  Verdict verdict() const;
  std::string describe() const;
};

struct ComparisonOptions {
  std::size_t roundTripSize = 5;
  completion::EngineConfig engine{};
  /// Replaces γ = [y(inl), y(inr)] (for mutation tests).
  std::optional<NatTrans> gamma;
};

/// φ = γ̂ for γ = [y(inl), y(inr)] : y(A)⊔y(B) -> y(A+B), and
/// ψ_X(e) = e(pair(η(l_id_A), η(r_id_B))). Checks ψ natural, φ∘ψ = id,
/// (ψ∘φ)∘η = η, and ψ(φ(t)) ≈ t on every closed term up to the size bound.
ComparisonIso comparisonIso(const EmbeddingContext &ctx, ObjId a, ObjId b, std::size_t cone,
                            const ComparisonOptions &options = {});

} // namespace catwb::lambek
