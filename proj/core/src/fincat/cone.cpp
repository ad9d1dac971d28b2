#include "catwb/fincat/cone.hpp"

#include <functional>
#include <set>

namespace catwb::fincat {

ProductCone ProductCone::binary(std::string name, ObjId apex, MorId fst, MorId snd,
                                const FinCategory &cat) {
  return ProductCone{std::move(name), apex, false, cat.cod(fst), cat.cod(snd), fst, snd};
}

ProductCone ProductCone::terminal(std::string name, ObjId apex) {
  return ProductCone{std::move(name), apex, true, 0, 0, 0, 0};
}

ConeCheck isProductCone(const FinCategory &cat, const ProductCone &cone) {
  ConeCheck out;
  auto fail = [&](ConeWitness w) {
    out.ok = false;
    out.witness = std::move(w);
    return out;
  };
  if (!cone.nullary) {
    if (cat.dom(cone.fst) != cone.apex || cat.cod(cone.fst) != cone.left ||
        cat.dom(cone.snd) != cone.apex || cat.cod(cone.snd) != cone.right)
      return fail({cone.apex, std::nullopt, std::nullopt, {},
                   "projections of " + cone.name + " do not leave the apex toward left/right"});
  }
  for (ObjId x = 0; x < cat.objectCount(); ++x) {
    const auto &toApex = cat.hom(x, cone.apex);
    if (cone.nullary) {
      if (toApex.size() != 1)
        return fail({x, std::nullopt, std::nullopt, toApex,
                     std::to_string(toApex.size()) + " morphisms " + cat.objectName(x) + " -> " +
                         cat.objectName(cone.apex)});
      continue;
    }
    for (MorId p : cat.hom(x, cone.left)) {
      for (MorId q : cat.hom(x, cone.right)) {
        std::vector<MorId> mediators;
        for (MorId m : toApex)
          if (cat.compose(cone.fst, m) == p && cat.compose(cone.snd, m) == q)
            mediators.push_back(m);
        if (mediators.size() != 1)
          return fail({x, p, q, mediators,
                       std::to_string(mediators.size()) + " mediators from " +
                           cat.objectName(x) + " for (" + cat.morphismName(p) + ", " +
                           cat.morphismName(q) + ")"});
      }
    }
  }
  return out;
}

std::vector<std::size_t> ConeCollection::conesAt(ObjId apex) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i)
    if (cones_[i].apex == apex)
      out.push_back(i);
  return out;
}

std::vector<std::pair<ObjId, ObjId>> ConeCollection::apexDependencies() const {
  std::vector<std::pair<ObjId, ObjId>> out;
  for (const auto &c : cones_) {
    if (c.nullary)
      continue;
    out.emplace_back(c.apex, c.left);
    out.emplace_back(c.apex, c.right);
  }
  return out;
}

std::optional<ObjId> ConeCollection::apexCycle(const FinCategory &cat) const {
  std::vector<std::vector<ObjId>> next(cat.objectCount());
  for (auto [a, b] : apexDependencies())
    next[a].push_back(b);
  std::vector<int> state(cat.objectCount(), 0); // 0 new, 1 open, 2 done
  std::optional<ObjId> hit;
  std::function<void(ObjId)> visit = [&](ObjId v) {
    state[v] = 1;
    for (ObjId w : next[v]) {
      if (hit)
        return;
      if (state[w] == 1)
        hit = w;
      else if (state[w] == 0)
        visit(w);
    }
    state[v] = 2;
  };
  for (ObjId v = 0; v < cat.objectCount() && !hit; ++v)
    if (state[v] == 0)
      visit(v);
  return hit;
}

bool ConeCollection::oneConePerApex() const {
  std::set<ObjId> seen;
  for (const auto &c : cones_)
    if (!seen.insert(c.apex).second)
      return false;
  return true;
}

std::vector<std::string> ConeCollection::validate(const FinCategory &cat) const {
  std::vector<std::string> out;
  for (const auto &c : cones_)
    if (auto check = isProductCone(cat, c); !check)
      out.push_back("cone " + c.name + ": " + check.witness->message);
  return out;
}

} // namespace catwb::fincat
