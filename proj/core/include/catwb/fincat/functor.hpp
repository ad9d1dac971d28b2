#pragma once

// Finite set-valued functors and natural transformations between them.
//
// A functor is covariant on its category. Presheaves on 𝒜 are functors on
// opposite(𝒜).

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catwb/fincat/category.hpp"
#include "catwb/fincat/cone.hpp"

namespace catwb::fincat {

class FinFunctor {
public:
  FinFunctor(std::shared_ptr<const FinCategory> cat, std::string name);

  const std::string &name() const { return name_; }
  void setName(std::string name) { name_ = std::move(name); }
  const FinCategory &category() const { return *cat_; }
  std::shared_ptr<const FinCategory> categoryPtr() const { return cat_; }

  void setCarrier(ObjId a, std::vector<std::string> elements);
  void setCarrierSize(ObjId a, std::size_t n);
  /// Table for F(m), indexed by elements of F(dom m).
  void setAction(MorId m, std::vector<int> table);
  void setActionEntry(MorId m, int x, int y);

  std::size_t carrierSize(ObjId a) const { return carriers_.at(a).size(); }
  const std::vector<std::string> &carrier(ObjId a) const { return carriers_.at(a); }
  const std::string &elementName(ObjId a, int x) const { return carriers_.at(a).at(x); }
  std::optional<int> findElement(ObjId a, std::string_view name) const;
  const std::vector<int> &action(MorId m) const { return actions_.at(m); }
  /// F(m)(x); throws std::out_of_range on a missing entry.
  int apply(MorId m, int x) const;

  /// Missing or out-of-range entries and failures of F(id) = id and
  /// F(g∘f) = F(g)∘F(f), each with its witness. Empty means valid.
  std::vector<std::string> validate() const;

  /// Carrier names and action tables are identical.
  bool sameTables(const FinFunctor &other) const;

private:
  std::shared_ptr<const FinCategory> cat_;
  std::string name_;
  std::vector<std::vector<std::string>> carriers_;
  std::vector<std::vector<int>> actions_;
};

/// Components α_A : F(A) -> G(A), indexed by object.
struct NatTrans {
  std::vector<std::vector<int>> components;

  int at(ObjId a, int x) const { return components.at(a).at(x); }
  friend bool operator==(const NatTrans &, const NatTrans &) = default;
};

/// The first failing square G(f)∘α_A = α_B∘F(f), or a malformed component.
std::optional<std::string> naturalityViolation(const FinFunctor &from, const FinFunctor &to,
                                               const NatTrans &alpha);
inline bool isNatural(const FinFunctor &from, const FinFunctor &to, const NatTrans &alpha) {
  return !naturalityViolation(from, to, alpha);
}

NatTrans identityNat(const FinFunctor &f);
/// β∘α.
NatTrans composeNat(const NatTrans &beta, const NatTrans &alpha);

/// True iff every component is a bijection.
bool functorIsoCheck(const FinFunctor &from, const FinFunctor &to, const NatTrans &alpha);

/// Every natural transformation F -> G, in lexicographic order of the
/// component tables (objects in order, then elements). Stops after
/// `limit` results when limit > 0.
std::vector<NatTrans> enumerateNatTrans(const FinFunctor &from, const FinFunctor &to,
                                        std::size_t limit = 0);

/// X ↦ Hom(a, X), acting by postcomposition. Element names are morphism
/// names. On opposite(𝒜) this is the representable presheaf Hom_𝒜(−, a).
FinFunctor yoneda(std::shared_ptr<const FinCategory> cat, ObjId a);
/// yoneda(b) -> yoneda(a) induced by h : a -> b, sending m to m∘h.
NatTrans yonedaMap(const FinCategory &cat, MorId h);

/// α ↦ α_a(id_a), as an element of F(a).
int yonedaElement(const FinCategory &cat, const NatTrans &alpha, ObjId a);
/// The transformation yoneda(a) -> F with m ↦ F(m)(x).
NatTrans yonedaTransformation(const FinFunctor &f, ObjId a, int x);

/// Pointwise disjoint union; left elements first, named l_<name> and
/// r_<name>.
struct Coproduct {
  FinFunctor sum;
  NatTrans inl;
  NatTrans inr;
};
Coproduct coproductPresheaf(const FinFunctor &f, const FinFunctor &g);
/// [α, β] : F ⊔ G -> H.
NatTrans copair(const Coproduct &c, const NatTrans &alpha, const NatTrans &beta);

/// The functor with singleton carriers.
FinFunctor terminalFunctor(std::shared_ptr<const FinCategory> cat, std::string name = "1");

/// Whether F sends the cone to a product in Set, with a witness.
struct PreservationCheck {
  bool ok = true;
  std::string witness;
  explicit operator bool() const { return ok; }
};
PreservationCheck preservesCone(const FinFunctor &f, const ProductCone &cone);
PreservationCheck preservesCones(const FinFunctor &f, const ConeCollection &cones);

struct FunctorSearch {
  std::size_t maxCarrier = 3;
  std::size_t maxNodes = 2'000'000;
  std::size_t maxResults = 0; // 0 = unbounded
};
/// Valid functors with carriers of size 1..maxCarrier, optionally
/// filtered by `keep`, in deterministic order. `exhausted` is set when the
/// node budget ran out.
std::vector<FinFunctor> enumerateFunctors(std::shared_ptr<const FinCategory> cat,
                                          const FunctorSearch &search, bool &exhausted,
                                          const std::function<bool(const FinFunctor &)> &keep = {},
                                          const std::function<bool(const std::vector<std::size_t> &)>
                                              &keepSizes = {});

} // namespace catwb::fincat
