#include "catwb/fincat/functor.hpp"

#include <algorithm>
#include <stdexcept>

namespace catwb::fincat {

FinFunctor::FinFunctor(std::shared_ptr<const FinCategory> cat, std::string name)
    : cat_(std::move(cat)), name_(std::move(name)) {
  carriers_.resize(cat_->objectCount());
  actions_.resize(cat_->morphismCount());
}

void FinFunctor::setCarrier(ObjId a, std::vector<std::string> elements) {
  carriers_.at(a) = std::move(elements);
}

void FinFunctor::setCarrierSize(ObjId a, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(std::to_string(i));
  setCarrier(a, std::move(names));
}

void FinFunctor::setAction(MorId m, std::vector<int> table) { actions_.at(m) = std::move(table); }

void FinFunctor::setActionEntry(MorId m, int x, int y) {
  auto &t = actions_.at(m);
  std::size_t n = carrierSize(cat_->dom(m));
  if (t.size() != n)
    t.assign(n, -1);
  t.at(x) = y;
}

std::optional<int> FinFunctor::findElement(ObjId a, std::string_view name) const {
  const auto &c = carriers_.at(a);
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] == name)
      return static_cast<int>(i);
  return std::nullopt;
}

int FinFunctor::apply(MorId m, int x) const {
  int y = actions_.at(m).at(x);
  if (y < 0)
    throw std::out_of_range("F(" + cat_->morphismName(m) + ") is undefined here");
  return y;
}

std::vector<std::string> FinFunctor::validate() const {
  std::vector<std::string> errors;
  const FinCategory &c = *cat_;
  auto elem = [&](ObjId a, int x) { return c.objectName(a) + "." + carriers_[a][x]; };
  bool tablesOk = true;
  for (MorId m = 0; m < c.morphismCount(); ++m) {
    const auto &t = actions_[m];
    std::size_t n = carrierSize(c.dom(m)), k = carrierSize(c.cod(m));
    if (t.size() != n) {
      errors.push_back("table of " + c.morphismName(m) + " has " + std::to_string(t.size()) +
                       " entries, expected " + std::to_string(n));
      tablesOk = false;
      continue;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (t[x] < 0 || static_cast<std::size_t>(t[x]) >= k) {
        errors.push_back("table of " + c.morphismName(m) + " is undefined or out of range at " +
                         elem(c.dom(m), static_cast<int>(x)));
        tablesOk = false;
      }
    }
  }
  if (!tablesOk)
    return errors;
  for (ObjId a = 0; a < c.objectCount(); ++a) {
    auto id = c.identityEntry(a);
    if (!id)
      continue;
    for (std::size_t x = 0; x < carrierSize(a); ++x)
      if (actions_[*id][x] != static_cast<int>(x)) {
        errors.push_back("F(" + c.morphismName(*id) + ") moves " + elem(a, static_cast<int>(x)));
        break;
      }
  }
  for (MorId g = 0; g < c.morphismCount(); ++g) {
    for (MorId f = 0; f < c.morphismCount(); ++f) {
      if (c.cod(f) != c.dom(g))
        continue;
      auto h = c.compositeEntry(g, f);
      if (!h)
        continue;
      for (std::size_t x = 0; x < carrierSize(c.dom(f)); ++x) {
        if (actions_[*h][x] != actions_[g][actions_[f][x]]) {
          errors.push_back("F(" + c.morphismName(*h) + ") differs from F(" + c.morphismName(g) +
                           ")∘F(" + c.morphismName(f) + ") at " +
                           elem(c.dom(f), static_cast<int>(x)));
          break;
        }
      }
    }
  }
  return errors;
}

bool FinFunctor::sameTables(const FinFunctor &other) const {
  return cat_->sameTables(*other.cat_) && carriers_ == other.carriers_ &&
         actions_ == other.actions_;
}

std::optional<std::string> naturalityViolation(const FinFunctor &from, const FinFunctor &to,
                                               const NatTrans &alpha) {
  const FinCategory &c = from.category();
  if (alpha.components.size() != c.objectCount())
    return "transformation has " + std::to_string(alpha.components.size()) +
           " components, expected " + std::to_string(c.objectCount());
  for (ObjId a = 0; a < c.objectCount(); ++a) {
    const auto &comp = alpha.components[a];
    if (comp.size() != from.carrierSize(a))
      return "component at " + c.objectName(a) + " has the wrong domain";
    for (int v : comp)
      if (v < 0 || static_cast<std::size_t>(v) >= to.carrierSize(a))
        return "component at " + c.objectName(a) + " leaves the target carrier";
  }
  for (MorId m = 0; m < c.morphismCount(); ++m) {
    ObjId a = c.dom(m), b = c.cod(m);
    for (std::size_t x = 0; x < from.carrierSize(a); ++x) {
      int lhs = to.apply(m, alpha.components[a][x]);
      int rhs = alpha.components[b][from.apply(m, static_cast<int>(x))];
      if (lhs != rhs)
        return "square for " + c.morphismName(m) + " fails at " + c.objectName(a) + "." +
               from.elementName(a, static_cast<int>(x)) + ": " + to.elementName(b, lhs) +
               " vs " + to.elementName(b, rhs);
    }
  }
  return std::nullopt;
}

NatTrans identityNat(const FinFunctor &f) {
  NatTrans out;
  for (ObjId a = 0; a < f.category().objectCount(); ++a) {
    std::vector<int> comp(f.carrierSize(a));
    for (std::size_t x = 0; x < comp.size(); ++x)
      comp[x] = static_cast<int>(x);
    out.components.push_back(std::move(comp));
  }
  return out;
}

NatTrans composeNat(const NatTrans &beta, const NatTrans &alpha) {
  NatTrans out;
  for (std::size_t a = 0; a < alpha.components.size(); ++a) {
    std::vector<int> comp;
    for (int x : alpha.components[a])
      comp.push_back(beta.components.at(a).at(x));
    out.components.push_back(std::move(comp));
  }
  return out;
}

bool functorIsoCheck(const FinFunctor &from, const FinFunctor &to, const NatTrans &alpha) {
  const FinCategory &c = from.category();
  if (alpha.components.size() != c.objectCount())
    return false;
  for (ObjId a = 0; a < c.objectCount(); ++a) {
    if (from.carrierSize(a) != to.carrierSize(a) || alpha.components[a].size() != from.carrierSize(a))
      return false;
    std::vector<bool> hit(to.carrierSize(a), false);
    for (int v : alpha.components[a]) {
      if (v < 0 || static_cast<std::size_t>(v) >= hit.size() || hit[v])
        return false;
      hit[v] = true;
    }
  }
  return true;
}

std::vector<NatTrans> enumerateNatTrans(const FinFunctor &from, const FinFunctor &to,
                                        std::size_t limit) {
  const FinCategory &c = from.category();
  std::size_t nobj = c.objectCount();
  std::vector<std::pair<ObjId, int>> slots;
  for (ObjId a = 0; a < nobj; ++a)
    for (std::size_t x = 0; x < from.carrierSize(a); ++x)
      slots.emplace_back(a, static_cast<int>(x));

  // preimage[m][y] = elements x of F(dom m) with F(m)(x) = y.
  std::vector<std::vector<std::vector<int>>> preimage(c.morphismCount());
  std::vector<std::vector<MorId>> outgoing(nobj), incoming(nobj);
  for (MorId m = 0; m < c.morphismCount(); ++m) {
    outgoing[c.dom(m)].push_back(m);
    incoming[c.cod(m)].push_back(m);
    preimage[m].resize(from.carrierSize(c.cod(m)));
    for (std::size_t x = 0; x < from.carrierSize(c.dom(m)); ++x)
      preimage[m][from.apply(m, static_cast<int>(x))].push_back(static_cast<int>(x));
  }

  NatTrans cur;
  for (ObjId a = 0; a < nobj; ++a)
    cur.components.emplace_back(from.carrierSize(a), -1);
  std::vector<NatTrans> out;

  auto consistent = [&](ObjId a, int x, int v) {
    for (MorId m : outgoing[a]) {
      int w = cur.components[c.cod(m)][from.apply(m, x)];
      if (w >= 0 && w != to.apply(m, v))
        return false;
    }
    for (MorId m : incoming[a]) {
      ObjId s = c.dom(m);
      for (int y : preimage[m][x]) {
        int u = cur.components[s][y];
        if (u >= 0 && to.apply(m, u) != v)
          return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == slots.size()) {
      out.push_back(cur);
      return limit == 0 || out.size() < limit;
    }
    auto [a, x] = slots[i];
    for (std::size_t v = 0; v < to.carrierSize(a); ++v) {
      cur.components[a][x] = static_cast<int>(v);
      if (consistent(a, x, static_cast<int>(v)) && !go(i + 1)) {
        cur.components[a][x] = -1;
        return false;
      }
    }
    cur.components[a][x] = -1;
    return true;
  };
  go(0);
  return out;
}

FinFunctor yoneda(std::shared_ptr<const FinCategory> cat, ObjId a) {
  const FinCategory &c = *cat;
  FinFunctor y(cat, "y(" + c.objectName(a) + ")");
  std::vector<std::vector<MorId>> homs(c.objectCount());
  for (ObjId x = 0; x < c.objectCount(); ++x) {
    homs[x] = c.hom(a, x);
    std::vector<std::string> names;
    for (MorId m : homs[x])
      names.push_back(c.morphismName(m));
    y.setCarrier(x, std::move(names));
  }
  auto position = [&](ObjId x, MorId m) {
    const auto &h = homs[x];
    for (std::size_t i = 0; i < h.size(); ++i)
      if (h[i] == m)
        return static_cast<int>(i);
    throw std::logic_error("composite outside its hom-set");
  };
  for (MorId f = 0; f < c.morphismCount(); ++f) {
    std::vector<int> table;
    for (MorId m : homs[c.dom(f)])
      table.push_back(position(c.cod(f), c.compose(f, m)));
    y.setAction(f, std::move(table));
  }
  return y;
}

NatTrans yonedaMap(const FinCategory &c, MorId h) {
  ObjId a = c.dom(h), b = c.cod(h);
  NatTrans out;
  for (ObjId x = 0; x < c.objectCount(); ++x) {
    const auto &from = c.hom(b, x);
    const auto &to = c.hom(a, x);
    std::vector<int> comp;
    for (MorId m : from) {
      MorId mh = c.compose(m, h);
      auto it = std::find(to.begin(), to.end(), mh);
      comp.push_back(static_cast<int>(it - to.begin()));
    }
    out.components.push_back(std::move(comp));
  }
  return out;
}

int yonedaElement(const FinCategory &c, const NatTrans &alpha, ObjId a) {
  const auto &h = c.hom(a, a);
  auto it = std::find(h.begin(), h.end(), c.identity(a));
  return alpha.components.at(a).at(static_cast<std::size_t>(it - h.begin()));
}

NatTrans yonedaTransformation(const FinFunctor &f, ObjId a, int x) {
  const FinCategory &c = f.category();
  NatTrans out;
  for (ObjId b = 0; b < c.objectCount(); ++b) {
    std::vector<int> comp;
    for (MorId m : c.hom(a, b))
      comp.push_back(f.apply(m, x));
    out.components.push_back(std::move(comp));
  }
  return out;
}

Coproduct coproductPresheaf(const FinFunctor &f, const FinFunctor &g) {
  const FinCategory &c = f.category();
  Coproduct out{FinFunctor(f.categoryPtr(), f.name() + "+" + g.name()), {}, {}};
  for (ObjId a = 0; a < c.objectCount(); ++a) {
    std::vector<std::string> names;
    std::vector<int> l, r;
    for (const auto &e : f.carrier(a)) {
      l.push_back(static_cast<int>(names.size()));
      names.push_back("l_" + e);
    }
    for (const auto &e : g.carrier(a)) {
      r.push_back(static_cast<int>(names.size()));
      names.push_back("r_" + e);
    }
    out.sum.setCarrier(a, std::move(names));
    out.inl.components.push_back(std::move(l));
    out.inr.components.push_back(std::move(r));
  }
  for (MorId m = 0; m < c.morphismCount(); ++m) {
    std::size_t shift = f.carrierSize(c.cod(m));
    std::vector<int> table;
    for (int v : f.action(m))
      table.push_back(v);
    for (int v : g.action(m))
      table.push_back(static_cast<int>(shift) + v);
    out.sum.setAction(m, std::move(table));
  }
  return out;
}

NatTrans copair(const Coproduct &c, const NatTrans &alpha, const NatTrans &beta) {
  NatTrans out;
  for (std::size_t a = 0; a < c.inl.components.size(); ++a) {
    std::vector<int> comp(c.inl.components[a].size() + c.inr.components[a].size());
    for (std::size_t x = 0; x < c.inl.components[a].size(); ++x)
      comp[c.inl.components[a][x]] = alpha.components.at(a).at(x);
    for (std::size_t x = 0; x < c.inr.components[a].size(); ++x)
      comp[c.inr.components[a][x]] = beta.components.at(a).at(x);
    out.components.push_back(std::move(comp));
  }
  return out;
}

FinFunctor terminalFunctor(std::shared_ptr<const FinCategory> cat, std::string name) {
  FinFunctor t(cat, std::move(name));
  for (ObjId a = 0; a < cat->objectCount(); ++a)
    t.setCarrier(a, {"*"});
  for (MorId m = 0; m < cat->morphismCount(); ++m)
    t.setAction(m, {0});
  return t;
}

PreservationCheck preservesCone(const FinFunctor &f, const ProductCone &cone) {
  const FinCategory &c = f.category();
  std::size_t n = f.carrierSize(cone.apex);
  if (cone.nullary) {
    if (n == 1)
      return {};
    return {false, "|" + f.name() + "(" + c.objectName(cone.apex) + ")| = " + std::to_string(n) +
                       ", expected 1 for terminal cone " + cone.name};
  }
  std::size_t na = f.carrierSize(cone.left), nb = f.carrierSize(cone.right);
  std::vector<int> owner(na * nb, -1);
  for (std::size_t x = 0; x < n; ++x) {
    int p = f.apply(cone.fst, static_cast<int>(x)), q = f.apply(cone.snd, static_cast<int>(x));
    auto &slot = owner[static_cast<std::size_t>(p) * nb + static_cast<std::size_t>(q)];
    if (slot >= 0)
      return {false, "cone " + cone.name + ": " + c.objectName(cone.apex) + "." +
                         f.elementName(cone.apex, slot) + " and " + c.objectName(cone.apex) + "." +
                         f.elementName(cone.apex, static_cast<int>(x)) +
                         " have the same projections (" + f.elementName(cone.left, p) + ", " +
                         f.elementName(cone.right, q) + ")"};
    slot = static_cast<int>(x);
  }
  for (std::size_t i = 0; i < owner.size(); ++i)
    if (owner[i] < 0)
      return {false, "cone " + cone.name + ": no element of " + c.objectName(cone.apex) +
                         " projects to (" +
                         f.elementName(cone.left, static_cast<int>(i / nb)) + ", " +
                         f.elementName(cone.right, static_cast<int>(i % nb)) + ")"};
  return {};
}

PreservationCheck preservesCones(const FinFunctor &f, const ConeCollection &cones) {
  for (const auto &cone : cones.cones())
    if (auto r = preservesCone(f, cone); !r)
      return r;
  return {};
}

std::vector<FinFunctor> enumerateFunctors(
    std::shared_ptr<const FinCategory> cat, const FunctorSearch &search, bool &exhausted,
    const std::function<bool(const FinFunctor &)> &keep,
    const std::function<bool(const std::vector<std::size_t> &)> &keepSizes) {
  const FinCategory &c = *cat;
  std::size_t nobj = c.objectCount(), nmor = c.morphismCount();
  exhausted = false;
  std::vector<FinFunctor> out;
  std::size_t nodes = 0;

  struct Triple {
    MorId g, f, h;
  };
  std::vector<std::vector<Triple>> touching(nmor);
  for (MorId g = 0; g < nmor; ++g)
    for (MorId f = 0; f < nmor; ++f)
      if (c.cod(f) == c.dom(g))
        if (auto h = c.compositeEntry(g, f)) {
          Triple t{g, f, *h};
          touching[g].push_back(t);
          if (f != g)
            touching[f].push_back(t);
          if (*h != g && *h != f)
            touching[*h].push_back(t);
        }

  std::vector<std::size_t> sizes(nobj, 1);
  while (true) {
    if (!keepSizes || keepSizes(sizes)) {
      FinFunctor cur(cat, "G");
      for (ObjId a = 0; a < nobj; ++a)
        cur.setCarrierSize(a, sizes[a]);
      std::vector<std::vector<int>> tables(nmor);
      std::vector<std::pair<MorId, int>> slots;
      for (MorId m = 0; m < nmor; ++m) {
        tables[m].assign(sizes[c.dom(m)], -1);
        if (c.isIdentity(m)) {
          for (std::size_t x = 0; x < tables[m].size(); ++x)
            tables[m][x] = static_cast<int>(x);
        } else {
          for (std::size_t x = 0; x < tables[m].size(); ++x)
            slots.emplace_back(m, static_cast<int>(x));
        }
      }
      auto consistent = [&](MorId m) {
        for (const Triple &t : touching[m]) {
          const auto &tf = tables[t.f], &tg = tables[t.g], &th = tables[t.h];
          for (std::size_t x = 0; x < tf.size(); ++x) {
            int y = tf[x];
            if (y < 0 || th[x] < 0 || tg[y] < 0)
              continue;
            if (tg[y] != th[x])
              return false;
          }
        }
        return true;
      };
      std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (++nodes > search.maxNodes) {
          exhausted = true;
          return false;
        }
        if (i == slots.size()) {
          for (MorId m = 0; m < nmor; ++m)
            cur.setAction(m, tables[m]);
          if (!keep || keep(cur))
            out.push_back(cur);
          return search.maxResults == 0 || out.size() < search.maxResults;
        }
        auto [m, x] = slots[i];
        for (std::size_t v = 0; v < sizes[c.cod(m)]; ++v) {
          tables[m][x] = static_cast<int>(v);
          if (consistent(m) && !go(i + 1)) {
            tables[m][x] = -1;
            return false;
          }
        }
        tables[m][x] = -1;
        return true;
      };
      if (!go(0))
        return out;
    }
    std::size_t k = nobj;
    bool done = true;
    while (k > 0) {
      --k;
      if (++sizes[k] <= search.maxCarrier) {
        done = false;
        break;
      }
      sizes[k] = 1;
    }
    if (done)
      break;
  }
  return out;
}

} // namespace catwb::fincat
