#pragma once

// Equational theories read off finite categories, cones and functors.
//
// Sorts are the objects (SortId a is object a). Symbols for morphisms come
// first (SymbolId m is morphism m), then one pair symbol per binary cone and
// one unit constant per nullary cone, then one constant per element of the
// functor, named OBJ.elem.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catwb/fincat/category.hpp"
#include "catwb/fincat/cone.hpp"
#include "catwb/fincat/functor.hpp"
#include "catwb/msa/algebra.hpp"
#include "catwb/msa/term.hpp"

namespace catwb::theories {

using fincat::ConeCollection;
using fincat::FinCategory;
using fincat::FinFunctor;
using fincat::MorId;
using fincat::NatTrans;
using fincat::ObjId;

enum class EquationKind { Identity, Composition, Fst, Snd, PairEta, Unit, Action, Beta, Eta };
const char *kindName(EquationKind k);

struct SymbolOrigin {
  enum class Kind { Morphism, Pair, Unit, Constant, Eql } kind;
  std::uint32_t index = 0; // morphism id, or cone index for Pair/Unit/Eql
  ObjId object = 0;        // Constant: the object
  int element = 0;         // Constant: the element of F(object)
};

class InvalidCone : public std::runtime_error {
public:
  InvalidCone(std::string cone, std::string witness)
      : std::runtime_error("cone " + cone + " is not a product: " + witness),
        cone_(std::move(cone)), witness_(std::move(witness)) {}
  const std::string &cone() const { return cone_; }
  const std::string &witness() const { return witness_; }

private:
  std::string cone_, witness_;
};

class NotAModel : public std::runtime_error {
public:
  explicit NotAModel(std::string equation)
      : std::runtime_error("equation fails: " + equation), equation_(std::move(equation)) {}
  const std::string &equation() const { return equation_; }

private:
  std::string equation_;
};

class Theory {
public:
  std::shared_ptr<msa::Signature> sig;
  std::vector<msa::Equation> equations;
  std::vector<EquationKind> kinds;
  std::vector<SymbolOrigin> origins; // by SymbolId

  std::shared_ptr<const FinCategory> category;
  ConeCollection cones;
  std::optional<FinFunctor> functor;

  const FinCategory &cat() const { return *category; }
  msa::SortId sort(ObjId a) const { return msa::SortId{a}; }
  ObjId object(msa::SortId s) const { return s.value; }
  msa::SymbolId morphismSymbol(MorId m) const { return msa::SymbolId{m}; }
  const SymbolOrigin &origin(msa::SymbolId f) const { return origins.at(f.value); }

  std::optional<msa::SymbolId> pairSymbol(std::size_t cone) const;
  std::optional<msa::SymbolId> unitSymbol(std::size_t cone) const;
  /// The constant for element x of F(a).
  msa::SymbolId constantSymbol(ObjId a, int x) const;
  msa::Term constant(ObjId a, int x) const { return sig->constant(constantSymbol(a, x)); }
  bool hasFunctor() const { return functor.has_value(); }

  std::size_t countKind(EquationKind k) const;
  /// Equations of the given kinds, in order.
  std::vector<msa::Equation> equationsOf(std::initializer_list<EquationKind> ks) const;

  /// Sorted listing of sorts, symbols and equations.
  std::string listing() const;

  std::vector<std::optional<msa::SymbolId>> coneSymbols; // by cone index
  std::vector<std::vector<msa::SymbolId>> constants;     // [object][element]
};

Theory theoryOfCategory(std::shared_ptr<const FinCategory> cat);
/// Throws InvalidCone when a cone fails the universal property.
Theory theoryWithCones(std::shared_ptr<const FinCategory> cat, const ConeCollection &cones);
Theory theoryOfFunctor(std::shared_ptr<const FinCategory> cat, const ConeCollection &cones,
                       const FinFunctor &f);

/// The Σ-algebra of a functor G: carriers G(A), morphism tables G(f); a
/// pair symbol sends (a, b) to the element with those projections when one
/// exists (the first, in carrier order) and is undefined otherwise; unit is
/// element 0 when the apex carrier is nonempty. When the theory has functor
/// constants, constant (A, c) is γ_A(c), with γ defaulting to the identity.
msa::FinAlgebra functorToAlgebra(const Theory &t, const FinFunctor &g,
                                 const NatTrans *gamma = nullptr);

/// Carriers and morphism tables of an algebra as a functor on the theory's
/// category. Throws NotAModel naming the first violated id/comp equation.
FinFunctor algebraToFunctor(const Theory &t, const msa::FinAlgebra &alg,
                            std::string name = "T");

/// The first equation of the given kinds that fails in alg (an application
/// that is undefined on one side only counts as a failure), or an undefined
/// constant that they mention.
std::optional<std::string> modelViolation(const Theory &t, const msa::FinAlgebra &alg,
                                          std::initializer_list<EquationKind> ks);

} // namespace catwb::theories
