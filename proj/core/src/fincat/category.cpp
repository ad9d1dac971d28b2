#include "catwb/fincat/category.hpp"

#include <stdexcept>

namespace catwb::fincat {

ObjId FinCategory::addObject(std::string name) {
  if (objectIndex_.contains(name))
    throw std::invalid_argument("duplicate object " + name);
  auto id = static_cast<ObjId>(objects_.size());
  objectIndex_.emplace(name, id);
  objects_.push_back(std::move(name));
  identities_.push_back(-1);
  homValid_ = false;
  return id;
}

MorId FinCategory::addMorphism(std::string name, ObjId dom, ObjId cod) {
  if (morphismIndex_.contains(name))
    throw std::invalid_argument("duplicate morphism " + name);
  if (dom >= objects_.size() || cod >= objects_.size())
    throw std::invalid_argument("morphism " + name + " has an undeclared endpoint");
  auto id = static_cast<MorId>(morphisms_.size());
  morphismIndex_.emplace(name, id);
  morphisms_.push_back(Morphism{std::move(name), dom, cod});
  growTables();
  homValid_ = false;
  return id;
}

void FinCategory::growTables() {
  std::size_t n = morphisms_.size();
  std::vector<std::int64_t> next(n * n, -1);
  std::size_t old = n - 1;
  for (std::size_t g = 0; g < old; ++g)
    for (std::size_t f = 0; f < old; ++f)
      next[g * n + f] = comp_[g * old + f];
  comp_ = std::move(next);
}

void FinCategory::setIdentity(ObjId a, MorId m) { identities_.at(a) = m; }

void FinCategory::setComposite(MorId g, MorId f, MorId h) {
  std::size_t n = morphisms_.size();
  if (g >= n || f >= n || h >= n)
    throw std::out_of_range("composition entry outside the morphism set");
  comp_[g * n + f] = h;
}

void FinCategory::clearComposite(MorId g, MorId f) { comp_.at(g * morphisms_.size() + f) = -1; }

std::optional<ObjId> FinCategory::findObject(std::string_view name) const {
  auto it = objectIndex_.find(std::string(name));
  if (it == objectIndex_.end())
    return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::findMorphism(std::string_view name) const {
  auto it = morphismIndex_.find(std::string(name));
  if (it == morphismIndex_.end())
    return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::identityEntry(ObjId a) const {
  std::int64_t m = identities_.at(a);
  if (m < 0)
    return std::nullopt;
  return static_cast<MorId>(m);
}

MorId FinCategory::identity(ObjId a) const {
  auto m = identityEntry(a);
  if (!m)
    throw std::logic_error("object " + objects_.at(a) + " has no identity");
  return *m;
}

bool FinCategory::isIdentity(MorId m) const {
  ObjId a = dom(m);
  return a == cod(m) && identities_[a] == static_cast<std::int64_t>(m);
}

std::optional<MorId> FinCategory::compositeEntry(MorId g, MorId f) const {
  std::int64_t h = comp_.at(g * morphisms_.size() + f);
  if (h < 0)
    return std::nullopt;
  return static_cast<MorId>(h);
}

MorId FinCategory::compose(MorId g, MorId f) const {
  if (cod(f) != dom(g))
    throw std::logic_error(morphismName(g) + " . " + morphismName(f) + " is not composable");
  auto h = compositeEntry(g, f);
  if (!h)
    throw std::logic_error("no entry for " + morphismName(g) + " . " + morphismName(f));
  return *h;
}

const std::vector<MorId> &FinCategory::hom(ObjId a, ObjId b) const {
  std::size_t n = objects_.size();
  if (!homValid_) {
    homCache_.assign(n * n, {});
    for (MorId m = 0; m < morphisms_.size(); ++m)
      homCache_[morphisms_[m].dom * n + morphisms_[m].cod].push_back(m);
    homValid_ = true;
  }
  return homCache_.at(a * n + b);
}

bool FinCategory::sameTables(const FinCategory &other) const {
  if (objects_ != other.objects_ || identities_ != other.identities_ || comp_ != other.comp_)
    return false;
  if (morphisms_.size() != other.morphisms_.size())
    return false;
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    const Morphism &a = morphisms_[i], &b = other.morphisms_[i];
    if (a.name != b.name || a.dom != b.dom || a.cod != b.cod)
      return false;
  }
  return true;
}

const char *kindName(CategoryError::Kind k) {
  switch (k) {
  case CategoryError::Kind::MissingIdentity:
    return "MissingIdentity";
  case CategoryError::Kind::IllTypedIdentity:
    return "IllTypedIdentity";
  case CategoryError::Kind::PartialComposition:
    return "PartialComposition";
  case CategoryError::Kind::IllTypedComposite:
    return "IllTypedComposite";
  case CategoryError::Kind::BadIdentity:
    return "BadIdentity";
  case CategoryError::Kind::NonAssociative:
    return "NonAssociative";
  }
  return "?";
}

std::vector<CategoryError> validateCategory(const FinCategory &cat) {
  using Kind = CategoryError::Kind;
  std::vector<CategoryError> errors;
  auto name = [&](MorId m) { return cat.morphismName(m); };

  for (ObjId a = 0; a < cat.objectCount(); ++a) {
    auto id = cat.identityEntry(a);
    if (!id) {
      errors.push_back({Kind::MissingIdentity, {}, a, "object " + cat.objectName(a) + " has no identity"});
    } else if (cat.dom(*id) != a || cat.cod(*id) != a) {
      errors.push_back({Kind::IllTypedIdentity, {*id}, a,
                        "identity of " + cat.objectName(a) + " is " + name(*id) +
                            ", which is not an endomorphism of it"});
    }
  }

  std::size_t n = cat.morphismCount();
  bool typed = true;
  for (MorId g = 0; g < n; ++g) {
    for (MorId f = 0; f < n; ++f) {
      auto h = cat.compositeEntry(g, f);
      bool composable = cat.cod(f) == cat.dom(g);
      if (composable && !h) {
        errors.push_back({Kind::PartialComposition, {g, f}, std::nullopt,
                          "no composite for " + name(g) + " . " + name(f)});
        typed = false;
      } else if (!composable && h) {
        errors.push_back({Kind::IllTypedComposite, {g, f}, std::nullopt,
                          "composite given for non-composable " + name(g) + " . " + name(f)});
      } else if (h && (cat.dom(*h) != cat.dom(f) || cat.cod(*h) != cat.cod(g))) {
        errors.push_back({Kind::IllTypedComposite, {g, f}, std::nullopt,
                          name(g) + " . " + name(f) + " = " + name(*h) + " has the wrong type"});
        typed = false;
      }
    }
  }
  if (!errors.empty() && !typed)
    return errors;

  for (MorId f = 0; f < n; ++f) {
    auto left = cat.identityEntry(cat.cod(f));
    auto right = cat.identityEntry(cat.dom(f));
    bool bad = (left && cat.compositeEntry(*left, f) != f) ||
               (right && cat.compositeEntry(f, *right) != f);
    if (bad)
      errors.push_back({Kind::BadIdentity, {f}, std::nullopt,
                        "identity law fails for " + name(f)});
  }

  for (MorId f = 0; f < n; ++f) {
    for (MorId g = 0; g < n; ++g) {
      if (cat.cod(f) != cat.dom(g))
        continue;
      auto gf = cat.compositeEntry(g, f);
      for (MorId h = 0; h < n; ++h) {
        if (cat.cod(g) != cat.dom(h))
          continue;
        auto hg = cat.compositeEntry(h, g);
        if (!gf || !hg)
          continue;
        auto lhs = cat.compositeEntry(h, *gf), rhs = cat.compositeEntry(*hg, f);
        if (lhs != rhs)
          errors.push_back({Kind::NonAssociative, {h, g, f}, std::nullopt,
                            name(h) + " . (" + name(g) + " . " + name(f) + ") differs from (" +
                                name(h) + " . " + name(g) + ") . " + name(f)});
      }
    }
  }
  return errors;
}

FinCategory opposite(const FinCategory &cat) {
  const std::string &n = cat.name();
  std::string name = n.starts_with("op(") && n.ends_with(")") ? n.substr(3, n.size() - 4)
                                                              : "op(" + n + ")";
  FinCategory op(std::move(name));
  for (ObjId a = 0; a < cat.objectCount(); ++a)
    op.addObject(cat.objectName(a));
  for (MorId m = 0; m < cat.morphismCount(); ++m)
    op.addMorphism(cat.morphismName(m), cat.cod(m), cat.dom(m));
  for (ObjId a = 0; a < cat.objectCount(); ++a)
    if (auto id = cat.identityEntry(a))
      op.setIdentity(a, *id);
  for (MorId g = 0; g < cat.morphismCount(); ++g)
    for (MorId f = 0; f < cat.morphismCount(); ++f)
      if (auto h = cat.compositeEntry(f, g))
        op.setComposite(g, f, *h);
  return op;
}

} // namespace catwb::fincat
