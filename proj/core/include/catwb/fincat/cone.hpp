#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catwb/fincat/category.hpp"

namespace catwb::fincat {

/// A binary cone left <-fst- apex -snd-> right, or a nullary cone (apex only).
struct ProductCone {
  std::string name;
  ObjId apex = 0;
  bool nullary = false;
  ObjId left = 0;
  ObjId right = 0;
  MorId fst = 0;
  MorId snd = 0;

  static ProductCone binary(std::string name, ObjId apex, MorId fst, MorId snd,
                            const FinCategory &cat);
  static ProductCone terminal(std::string name, ObjId apex);
};

/// Why a cone is not a product: from X, the pair (p, q) (binary) has zero
/// or several mediators; for a nullary cone, p and q are unset.
struct ConeWitness {
  ObjId from = 0;
  std::optional<MorId> p;
  std::optional<MorId> q;
  std::vector<MorId> mediators;
  std::string message;
};

struct ConeCheck {
  bool ok = true;
  std::optional<ConeWitness> witness;
  explicit operator bool() const { return ok; }
};

ConeCheck isProductCone(const FinCategory &cat, const ProductCone &cone);

/// The chosen cones of one category.
class ConeCollection {
public:
  ConeCollection() = default;
  explicit ConeCollection(std::vector<ProductCone> cones) : cones_(std::move(cones)) {}

  void add(ProductCone cone) { cones_.push_back(std::move(cone)); }
  const std::vector<ProductCone> &cones() const { return cones_; }
  std::size_t size() const { return cones_.size(); }
  bool empty() const { return cones_.empty(); }
  const ProductCone &operator[](std::size_t i) const { return cones_.at(i); }

  /// Indices of cones with the given apex.
  std::vector<std::size_t> conesAt(ObjId apex) const;
  /// Edges apex -> left and apex -> right, per cone.
  std::vector<std::pair<ObjId, ObjId>> apexDependencies() const;
  /// An apex that reaches itself through the dependency edges, if any.
  std::optional<ObjId> apexCycle(const FinCategory &cat) const;
  /// True when no object is the apex of two cones.
  bool oneConePerApex() const;

  /// One message per cone that is not a product (with its witness).
  std::vector<std::string> validate(const FinCategory &cat) const;

private:
  std::vector<ProductCone> cones_;
};

} // namespace catwb::fincat
