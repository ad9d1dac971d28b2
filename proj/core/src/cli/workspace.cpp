#include <algorithm>
#include <set>

#include "catwb/cli/dsl.hpp"

namespace catwb::cli {

using fincat::MorId;
using fincat::ObjId;

std::shared_ptr<const FinCategory> Workspace::category(const std::string &ref) const {
  auto it = categories_.find(ref);
  return it == categories_.end() ? nullptr : it->second;
}

std::optional<std::size_t> Workspace::findFunctor(std::string_view name) const {
  for (std::size_t i = 0; i < functors_.size(); ++i)
    if (functors_[i].functor.name() == name)
      return i;
  return std::nullopt;
}

fincat::ConeCollection Workspace::productCones(const std::string &ref) const {
  fincat::ConeCollection out;
  for (const auto &c : cones_)
    if (c.category == ref)
      if (auto *p = std::get_if<fincat::ProductCone>(&c.cone))
        out.add(*p);
  return out;
}

std::vector<eqlz::EqualizerCone> Workspace::equalizerCones(const std::string &ref) const {
  std::vector<eqlz::EqualizerCone> out;
  for (const auto &c : cones_)
    if (c.category == ref)
      if (auto *e = std::get_if<eqlz::EqualizerCone>(&c.cone))
        out.push_back(*e);
  return out;
}

namespace {

using CategoryMap = std::map<std::string, std::shared_ptr<const FinCategory>>;

class Analyzer {
public:
  std::vector<Diagnostic> diags;

  void error(Position p, std::string msg) { diags.push_back({p, std::move(msg)}); }

  /// Looks up C or op(C); the opposite is built once and cached.
  std::shared_ptr<const FinCategory> resolve(CategoryMap &cats, const CategoryRef &r) {
    if (auto it = cats.find(r.str()); it != cats.end())
      return it->second;
    auto base = cats.find(r.name.name);
    if (base == cats.end()) {
      error(r.name.pos, "unknown category " + r.name.name);
      return nullptr;
    }
    auto op = std::make_shared<FinCategory>(fincat::opposite(*base->second));
    op->setName(r.str());
    cats[r.str()] = op;
    return op;
  }
};

std::shared_ptr<FinCategory> buildCategory(Analyzer &an, const CategoryDecl &d) {
  auto cat = std::make_shared<FinCategory>(d.name.name);
  for (const auto &o : d.objects) {
    if (cat->findObject(o.name)) {
      an.error(o.pos, "duplicate object " + o.name);
      continue;
    }
    cat->addObject(o.name);
  }
  for (const auto &m : d.morphisms) {
    auto dom = cat->findObject(m.dom.name), cod = cat->findObject(m.cod.name);
    if (!dom)
      an.error(m.dom.pos, "unknown object " + m.dom.name);
    if (!cod)
      an.error(m.cod.pos, "unknown object " + m.cod.name);
    if (cat->findMorphism(m.name.name)) {
      an.error(m.name.pos, "duplicate morphism " + m.name.name);
      continue;
    }
    if (dom && cod)
      cat->addMorphism(m.name.name, *dom, *cod);
  }
  std::vector<bool> hasId(cat->objectCount(), false);
  for (const auto &i : d.identities) {
    auto o = cat->findObject(i.object.name);
    auto m = cat->findMorphism(i.morphism.name);
    if (!o) {
      an.error(i.object.pos, "unknown object " + i.object.name);
      continue;
    }
    if (!m) {
      an.error(i.morphism.pos, "unknown morphism " + i.morphism.name);
      continue;
    }
    if (hasId[*o]) {
      an.error(i.object.pos, "duplicate identity for " + i.object.name);
      continue;
    }
    if (cat->dom(*m) != *o || cat->cod(*m) != *o) {
      an.error(i.morphism.pos, "identity " + i.morphism.name + " is not an endomorphism of " +
                                   i.object.name);
      continue;
    }
    hasId[*o] = true;
    cat->setIdentity(*o, *m);
  }
  for (ObjId o = 0; o < cat->objectCount(); ++o) {
    if (hasId[o])
      continue;
    std::string name = "id_" + cat->objectName(o);
    if (cat->findMorphism(name)) {
      an.error(d.name.pos, "generated identity " + name + " clashes with a declared morphism");
      continue;
    }
    cat->setIdentity(o, cat->addMorphism(name, o, o));
    hasId[o] = true;
  }

  const std::size_t n = cat->morphismCount();
  std::vector<std::int64_t> table(n * n, -1);
  for (const auto &k : d.compose) {
    auto g = cat->findMorphism(k.g.name), f = cat->findMorphism(k.f.name),
         h = cat->findMorphism(k.h.name);
    bool ok = true;
    for (auto [id, m] : {std::pair{&k.g, g}, std::pair{&k.f, f}, std::pair{&k.h, h}})
      if (!m) {
        an.error(id->pos, "unknown morphism " + id->name);
        ok = false;
      }
    if (!ok)
      continue;
    if (cat->cod(*f) != cat->dom(*g)) {
      an.error(k.g.pos, "ill-typed composite " + k.g.name + " . " + k.f.name + ": " + k.f.name +
                            " ends at " + cat->objectName(cat->cod(*f)) + ", " + k.g.name +
                            " starts at " + cat->objectName(cat->dom(*g)));
      continue;
    }
    if (cat->dom(*h) != cat->dom(*f) || cat->cod(*h) != cat->cod(*g)) {
      an.error(k.h.pos, "ill-typed composite " + k.g.name + " . " + k.f.name + " = " + k.h.name +
                            ": expected a morphism " + cat->objectName(cat->dom(*f)) + " -> " +
                            cat->objectName(cat->cod(*g)));
      continue;
    }
    auto &slot = table[*g * n + *f];
    if (slot >= 0) {
      an.error(k.g.pos, "duplicate composite " + k.g.name + " . " + k.f.name);
      continue;
    }
    slot = *h;
  }
  for (MorId f = 0; f < n; ++f) {
    for (MorId g = 0; g < n; ++g) {
      if (cat->cod(f) != cat->dom(g))
        continue;
      std::int64_t h = table[g * n + f];
      if (h < 0 && cat->isIdentity(g))
        h = f;
      else if (h < 0 && cat->isIdentity(f))
        h = g;
      if (h < 0) {
        an.error(d.name.pos, "non-total composition table: no entry for " +
                                 cat->morphismName(g) + " . " + cat->morphismName(f));
        continue;
      }
      cat->setComposite(g, f, static_cast<MorId>(h));
    }
  }
  return cat;
}

std::optional<std::vector<int>> buildTable(Analyzer &an, const std::vector<Mapsto> &entries,
                                           const std::vector<std::string> &from,
                                           const std::vector<std::string> &to,
                                           const std::string &what, Position where) {
  std::vector<int> t(from.size(), -1);
  bool ok = true;
  auto index = [](const std::vector<std::string> &v, const std::string &x) -> int {
    auto it = std::find(v.begin(), v.end(), x);
    return it == v.end() ? -1 : static_cast<int>(it - v.begin());
  };
  for (const auto &e : entries) {
    int a = index(from, e.from.name), b = index(to, e.to.name);
    if (a < 0) {
      an.error(e.from.pos, "unknown element " + e.from.name + " in " + what);
      ok = false;
      continue;
    }
    if (b < 0) {
      an.error(e.to.pos, "unknown element " + e.to.name + " in " + what);
      ok = false;
      continue;
    }
    if (t[a] >= 0) {
      an.error(e.from.pos, "duplicate entry for " + e.from.name + " in " + what);
      ok = false;
      continue;
    }
    t[a] = b;
  }
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] < 0 && ok) {
      an.error(where, "non-total table for " + what + ": no entry for " + from[i]);
      ok = false;
    }
  if (!ok)
    return std::nullopt;
  return t;
}

} // namespace

Workspace analyze(const SpecDocument &doc) {
  Workspace ws;
  Analyzer an;
  std::set<std::string> functorNames, coneNames, natNames;

  for (const auto &decl : doc.declarations) {
    if (auto *d = std::get_if<CategoryDecl>(&decl)) {
      if (ws.categories_.contains(d->name.name)) {
        an.error(d->name.pos, "duplicate category " + d->name.name);
        continue;
      }
      ws.categories_[d->name.name] = buildCategory(an, *d);
      ws.names_.push_back(d->name.name);
    } else if (auto *c = std::get_if<ConeDecl>(&decl)) {
      if (!coneNames.insert(c->name.name).second) {
        an.error(c->name.pos, "duplicate cone " + c->name.name);
        continue;
      }
      std::shared_ptr<const FinCategory> cat;
      std::string ref;
      if (c->category) {
        cat = an.resolve(ws.categories_, *c->category);
        ref = c->category->str();
      } else if (ws.names_.size() == 1) {
        ref = ws.names_.front();
        cat = ws.category(ref);
      } else {
        an.error(c->name.pos, "cone " + c->name.name + " needs a category (': CAT')");
      }
      if (!cat)
        continue;
      std::vector<std::string> keys;
      switch (c->kind) {
      case ConeDecl::Kind::Product:
        keys = {"apex", "left", "right", "fst", "snd"};
        break;
      case ConeDecl::Kind::Terminal:
        keys = {"apex"};
        break;
      case ConeDecl::Kind::Equalizer:
        keys = {"e", "f", "g"};
        break;
      }
      bool ok = true;
      std::set<std::string> seen;
      for (const auto &[k, v] : c->fields) {
        if (std::find(keys.begin(), keys.end(), k.name) == keys.end()) {
          an.error(k.pos, "unknown field " + k.name);
          ok = false;
        } else if (!seen.insert(k.name).second) {
          an.error(k.pos, "duplicate field " + k.name);
          ok = false;
        }
      }
      auto obj = [&](const char *key, bool required) -> std::optional<ObjId> {
        const Ident *v = c->field(key);
        if (!v) {
          if (required) {
            an.error(c->name.pos, std::string("cone ") + c->name.name + " has no " + key);
            ok = false;
          }
          return std::nullopt;
        }
        auto o = cat->findObject(v->name);
        if (!o) {
          an.error(v->pos, "unknown object " + v->name);
          ok = false;
        }
        return o;
      };
      auto mor = [&](const char *key) -> std::optional<MorId> {
        const Ident *v = c->field(key);
        if (!v) {
          an.error(c->name.pos, std::string("cone ") + c->name.name + " has no " + key);
          ok = false;
          return std::nullopt;
        }
        auto m = cat->findMorphism(v->name);
        if (!m) {
          an.error(v->pos, "unknown morphism " + v->name);
          ok = false;
        }
        return m;
      };
      Workspace::Cone out{c->name.name, ref, fincat::ProductCone{}};
      if (c->kind == ConeDecl::Kind::Terminal) {
        auto apex = obj("apex", true);
        if (!ok)
          continue;
        out.cone = fincat::ProductCone::terminal(c->name.name, *apex);
      } else if (c->kind == ConeDecl::Kind::Product) {
        auto apex = obj("apex", true);
        auto left = obj("left", false), right = obj("right", false);
        auto fst = mor("fst"), snd = mor("snd");
        if (!ok)
          continue;
        auto check = [&](const char *key, MorId m, std::optional<ObjId> end) {
          if (cat->dom(m) != *apex) {
            an.error(c->field(key)->pos, cat->morphismName(m) + " does not start at the apex");
            ok = false;
          } else if (end && cat->cod(m) != *end) {
            an.error(c->field(key)->pos, cat->morphismName(m) + " does not end at " +
                                             cat->objectName(*end));
            ok = false;
          }
        };
        check("fst", *fst, left);
        check("snd", *snd, right);
        if (!ok)
          continue;
        out.cone = fincat::ProductCone::binary(c->name.name, *apex, *fst, *snd, *cat);
      } else {
        auto e = mor("e"), f = mor("f"), g = mor("g");
        if (!ok)
          continue;
        out.cone = eqlz::EqualizerCone{c->name.name, *e, *f, *g};
      }
      ws.cones_.push_back(std::move(out));
    } else if (auto *f = std::get_if<FunctorDecl>(&decl)) {
      if (!functorNames.insert(f->name.name).second) {
        an.error(f->name.pos, "duplicate functor " + f->name.name);
        continue;
      }
      auto cat = an.resolve(ws.categories_, f->category);
      if (!cat)
        continue;
      fincat::FinFunctor F(cat, f->name.name);
      bool ok = true;
      std::vector<bool> has(cat->objectCount(), false);
      for (const auto &c : f->carriers) {
        auto o = cat->findObject(c.object.name);
        if (!o) {
          an.error(c.object.pos, "unknown object " + c.object.name);
          ok = false;
          continue;
        }
        if (has[*o]) {
          an.error(c.object.pos, "duplicate carrier for " + c.object.name);
          ok = false;
          continue;
        }
        has[*o] = true;
        std::vector<std::string> elems;
        for (const auto &e : c.elements) {
          if (std::find(elems.begin(), elems.end(), e.name) != elems.end()) {
            an.error(e.pos, "duplicate element " + e.name);
            ok = false;
          }
          elems.push_back(e.name);
        }
        F.setCarrier(*o, std::move(elems));
      }
      for (ObjId o = 0; o < cat->objectCount(); ++o)
        if (!has[o]) {
          an.error(f->name.pos, "functor " + f->name.name + " has no carrier for " +
                                    cat->objectName(o));
          ok = false;
        }
      if (!ok)
        continue;
      std::vector<bool> acted(cat->morphismCount(), false);
      for (const auto &a : f->actions) {
        auto m = cat->findMorphism(a.morphism.name);
        if (!m) {
          an.error(a.morphism.pos, "unknown morphism " + a.morphism.name);
          ok = false;
          continue;
        }
        if (acted[*m]) {
          an.error(a.morphism.pos, "duplicate action for " + a.morphism.name);
          ok = false;
          continue;
        }
        acted[*m] = true;
        auto t = buildTable(an, a.entries, F.carrier(cat->dom(*m)), F.carrier(cat->cod(*m)),
                            f->name.name + "(" + a.morphism.name + ")", a.morphism.pos);
        if (!t) {
          ok = false;
          continue;
        }
        F.setAction(*m, std::move(*t));
      }
      for (MorId m = 0; m < cat->morphismCount(); ++m) {
        if (acted[m])
          continue;
        std::size_t k = F.carrierSize(cat->dom(m));
        if (cat->isIdentity(m) || k == 0) {
          std::vector<int> id(k);
          for (std::size_t i = 0; i < k; ++i)
            id[i] = static_cast<int>(i);
          F.setAction(m, std::move(id));
        } else {
          an.error(f->name.pos, "non-total table: functor " + f->name.name + " has no action for " +
                                    cat->morphismName(m));
          ok = false;
        }
      }
      if (ok)
        ws.functors_.push_back({std::move(F), f->category.str()});
    } else if (auto *n = std::get_if<NatDecl>(&decl)) {
      if (!natNames.insert(n->name.name).second) {
        an.error(n->name.pos, "duplicate transformation " + n->name.name);
        continue;
      }
      auto from = ws.findFunctor(n->from.name), to = ws.findFunctor(n->to.name);
      if (!from)
        an.error(n->from.pos, "unknown functor " + n->from.name);
      if (!to)
        an.error(n->to.pos, "unknown functor " + n->to.name);
      if (!from || !to)
        continue;
      const auto &F = ws.functors_[*from];
      const auto &G = ws.functors_[*to];
      if (F.category != G.category) {
        an.error(n->to.pos, n->from.name + " and " + n->to.name + " live on different categories");
        continue;
      }
      const FinCategory &cat = F.functor.category();
      fincat::NatTrans alpha;
      alpha.components.resize(cat.objectCount());
      std::vector<bool> has(cat.objectCount(), false);
      bool ok = true;
      for (const auto &c : n->components) {
        auto o = cat.findObject(c.object.name);
        if (!o) {
          an.error(c.object.pos, "unknown object " + c.object.name);
          ok = false;
          continue;
        }
        if (has[*o]) {
          an.error(c.object.pos, "duplicate component for " + c.object.name);
          ok = false;
          continue;
        }
        has[*o] = true;
        auto t = buildTable(an, c.entries, F.functor.carrier(*o), G.functor.carrier(*o),
                            n->name.name + "_" + c.object.name, c.object.pos);
        if (!t) {
          ok = false;
          continue;
        }
        alpha.components[*o] = std::move(*t);
      }
      for (ObjId o = 0; o < cat.objectCount(); ++o)
        if (!has[o] && F.functor.carrierSize(o) > 0) {
          an.error(n->name.pos, "non-total table: " + n->name.name + " has no component at " +
                                    cat.objectName(o));
          ok = false;
        }
      if (ok)
        ws.nats_.push_back({n->name.name, *from, *to, std::move(alpha)});
    } else if (auto *q = std::get_if<QueryDecl>(&decl)) {
      std::optional<std::size_t> f;
      if (q->functor) {
        f = ws.findFunctor(q->functor->name);
        if (!f)
          an.error(q->functor->pos, "unknown functor " + q->functor->name);
      } else if (!ws.functors_.empty()) {
        f = 0;
      } else {
        an.error(q->name.pos, "query " + q->name.name + " needs a functor declared before it");
      }
      if (f)
        ws.queries_.push_back({q->name.name, *f, q->items});
    }
  }
  if (!an.diags.empty()) {
    std::stable_sort(an.diags.begin(), an.diags.end(),
                     [](const Diagnostic &a, const Diagnostic &b) { return a.pos < b.pos; });
    throw DslError(std::move(an.diags));
  }
  return ws;
}

} // namespace catwb::cli
