#pragma once

// Finite categories given by explicit tables.
//
// Convention used everywhere in the library: compose(g, f) is g∘f and is
// defined exactly when cod(f) = dom(g).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace catwb::fincat {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;

struct Morphism {
  std::string name;
  ObjId dom;
  ObjId cod;
};

class FinCategory {
public:
  explicit FinCategory(std::string name = "C") : name_(std::move(name)) {}

  const std::string &name() const { return name_; }
  void setName(std::string name) { name_ = std::move(name); }

  ObjId addObject(std::string name);
  MorId addMorphism(std::string name, ObjId dom, ObjId cod);
  void setIdentity(ObjId a, MorId m);
  /// Records g∘f = h. Entries for non-composable pairs are kept so that
  /// validation can report them.
  void setComposite(MorId g, MorId f, MorId h);
  void clearComposite(MorId g, MorId f);

  std::size_t objectCount() const { return objects_.size(); }
  std::size_t morphismCount() const { return morphisms_.size(); }
  const std::string &objectName(ObjId a) const { return objects_.at(a); }
  const Morphism &morphism(MorId m) const { return morphisms_.at(m); }
  const std::string &morphismName(MorId m) const { return morphisms_.at(m).name; }
  ObjId dom(MorId m) const { return morphisms_.at(m).dom; }
  ObjId cod(MorId m) const { return morphisms_.at(m).cod; }
  std::optional<ObjId> findObject(std::string_view name) const;
  std::optional<MorId> findMorphism(std::string_view name) const;

  std::optional<MorId> identityEntry(ObjId a) const;
  /// Identity of a; throws std::logic_error when none was declared.
  MorId identity(ObjId a) const;
  bool isIdentity(MorId m) const;
  /// The table entry for g∘f, if any (including ill-typed entries).
  std::optional<MorId> compositeEntry(MorId g, MorId f) const;
  /// g∘f; throws std::logic_error when the pair is not composable or the
  /// entry is missing.
  MorId compose(MorId g, MorId f) const;

  /// Morphisms a -> b in declaration order.
  const std::vector<MorId> &hom(ObjId a, ObjId b) const;

  /// Table-for-table equality (names included, category name ignored).
  bool sameTables(const FinCategory &other) const;

private:
  void growTables();

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::unordered_map<std::string, ObjId> objectIndex_;
  std::unordered_map<std::string, MorId> morphismIndex_;
  std::vector<std::int64_t> identities_;
  std::vector<std::int64_t> comp_; // [g * n + f]
  mutable std::vector<std::vector<MorId>> homCache_;
  mutable bool homValid_ = false;
};

struct CategoryError {
  enum class Kind {
    MissingIdentity,
    IllTypedIdentity,
    PartialComposition,
    IllTypedComposite,
    BadIdentity,
    NonAssociative,
  };
  Kind kind;
  std::vector<MorId> morphisms; // the witnessing morphisms, outermost first
  std::optional<ObjId> object;
  std::string message;
};

const char *kindName(CategoryError::Kind k);

/// Every violated law with its witness; empty means the tables form a
/// category. Associativity is reported for triples (h, g, f) with
/// h∘(g∘f) ≠ (h∘g)∘f.
std::vector<CategoryError> validateCategory(const FinCategory &cat);

/// Domains and codomains swapped, comp'(g, f) = comp(f, g).
FinCategory opposite(const FinCategory &cat);

} // namespace catwb::fincat
