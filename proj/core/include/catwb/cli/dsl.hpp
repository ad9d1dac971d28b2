#pragma once

// The .cat specification language.
//
//   category NAME { objects: a, b; morphisms: f : a -> b; ...;
//                   identity: a = ida; ...; compose: g . f = h; ... }
//   cone NAME [: CAT] { apex: p, left: a, right: b, fst: m, snd: n }
//   terminal NAME [: CAT] { apex: t }
//   equalizer NAME [: CAT] { e: m, f: n, g: k }
//   functor NAME : CAT { OBJ -> { x, y }; MOR -> [ x => y, ... ]; ... }
//   nat NAME : F -> G { OBJ : [ x => y, ... ]; ... }
//   query NAME [: FUNCTOR] { normalize "TERM"; equal "TERM" "TERM"; }
//
// CAT is a category name or op(NAME). `#` starts a comment. Identities
// not given in an identity section are generated as id_OBJ, and so are
// the composition and action entries involving an identity; every other
// entry must be present.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catwb/eqlz/equalizer.hpp"
#include "catwb/fincat/cone.hpp"
#include "catwb/fincat/functor.hpp"

namespace catwb::cli {

using fincat::FinCategory;

struct Position {
  int line = 1;
  int column = 1;
  friend auto operator<=>(const Position &, const Position &) = default;
};

struct Diagnostic {
  Position pos;
  std::string message;
  std::string str() const;
};

class DslError : public std::runtime_error {
public:
  explicit DslError(std::vector<Diagnostic> ds);
  const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }

private:
  std::vector<Diagnostic> diagnostics_;
};

/// A name with its source position. Positions are ignored by ==.
struct Ident {
  std::string name;
  Position pos;
  friend bool operator==(const Ident &a, const Ident &b) { return a.name == b.name; }
};

struct CategoryRef {
  Ident name;
  bool opposite = false;
  std::string str() const { return opposite ? "op(" + name.name + ")" : name.name; }
  friend bool operator==(const CategoryRef &, const CategoryRef &) = default;
};

struct Mapsto {
  Ident from, to;
  friend bool operator==(const Mapsto &, const Mapsto &) = default;
};

struct CategoryDecl {
  struct Morphism {
    Ident name, dom, cod;
    friend bool operator==(const Morphism &, const Morphism &) = default;
  };
  struct Identity {
    Ident object, morphism;
    friend bool operator==(const Identity &, const Identity &) = default;
  };
  struct Composite {
    Ident g, f, h;
    friend bool operator==(const Composite &, const Composite &) = default;
  };
  Ident name;
  std::vector<Ident> objects;
  std::vector<Morphism> morphisms;
  std::vector<Identity> identities;
  std::vector<Composite> compose;
  friend bool operator==(const CategoryDecl &, const CategoryDecl &) = default;
};

struct ConeDecl {
  enum class Kind { Product, Terminal, Equalizer };
  Kind kind = Kind::Product;
  Ident name;
  std::optional<CategoryRef> category;
  std::vector<std::pair<Ident, Ident>> fields; // key: value, in source order
  const Ident *field(std::string_view key) const;
  friend bool operator==(const ConeDecl &, const ConeDecl &) = default;
};

struct FunctorDecl {
  struct Carrier {
    Ident object;
    std::vector<Ident> elements;
    friend bool operator==(const Carrier &, const Carrier &) = default;
  };
  struct Action {
    Ident morphism;
    std::vector<Mapsto> entries;
    friend bool operator==(const Action &, const Action &) = default;
  };
  Ident name;
  CategoryRef category;
  std::vector<Carrier> carriers;
  std::vector<Action> actions;
  friend bool operator==(const FunctorDecl &, const FunctorDecl &) = default;
};

struct NatDecl {
  struct Component {
    Ident object;
    std::vector<Mapsto> entries;
    friend bool operator==(const Component &, const Component &) = default;
  };
  Ident name, from, to;
  std::vector<Component> components;
  friend bool operator==(const NatDecl &, const NatDecl &) = default;
};

struct QueryDecl {
  struct Item {
    enum class Kind { Normalize, Equal } kind = Kind::Normalize;
    std::vector<std::string> terms;
    Position pos;
    friend bool operator==(const Item &a, const Item &b) {
      return a.kind == b.kind && a.terms == b.terms;
    }
  };
  Ident name;
  std::optional<Ident> functor;
  std::vector<Item> items;
  friend bool operator==(const QueryDecl &, const QueryDecl &) = default;
};

using Declaration = std::variant<CategoryDecl, ConeDecl, FunctorDecl, NatDecl, QueryDecl>;

struct SpecDocument {
  std::vector<Declaration> declarations;
  friend bool operator==(const SpecDocument &, const SpecDocument &) = default;
};

/// Throws DslError with the first syntax error.
SpecDocument parseDocument(std::string_view source);
/// Canonical text; parseDocument(print(d)) == d.
std::string print(const SpecDocument &doc);

// ---------------------------------------------------------------------------

/// A document with names resolved and tables built.
class Workspace {
public:
  struct Cone {
    std::string name;
    std::string category; // "C" or "op(C)"
    std::variant<fincat::ProductCone, eqlz::EqualizerCone> cone;
  };
  struct Functor {
    fincat::FinFunctor functor;
    std::string category;
  };
  struct Nat {
    std::string name;
    std::size_t from, to; // functor indices
    fincat::NatTrans alpha;
  };
  struct Query {
    std::string name;
    std::size_t functor;
    std::vector<QueryDecl::Item> items;
  };

  /// "C" or "op(C)"; nullptr when unknown.
  std::shared_ptr<const FinCategory> category(const std::string &ref) const;
  /// Declared categories in order.
  const std::vector<std::string> &categoryNames() const { return names_; }
  const std::vector<Cone> &cones() const { return cones_; }
  const std::vector<Functor> &functors() const { return functors_; }
  const std::vector<Nat> &nats() const { return nats_; }
  const std::vector<Query> &queries() const { return queries_; }
  std::optional<std::size_t> findFunctor(std::string_view name) const;

  /// Product and terminal cones on the given category reference.
  fincat::ConeCollection productCones(const std::string &ref) const;
  std::vector<eqlz::EqualizerCone> equalizerCones(const std::string &ref) const;

private:
  friend Workspace analyze(const SpecDocument &doc);
  std::vector<std::string> names_;
  std::map<std::string, std::shared_ptr<const FinCategory>> categories_;
  std::vector<Cone> cones_;
  std::vector<Functor> functors_;
  std::vector<Nat> nats_;
  std::vector<Query> queries_;
};

/// Resolves names and builds tables. Throws DslError listing every
/// problem found (unknown or duplicate ids, ill-typed entries, non-total
/// tables), ordered by position. The laws themselves are not checked here.
Workspace analyze(const SpecDocument &doc);

} // namespace catwb::cli
