#pragma once

// Multi-sorted signatures and hash-consed terms.
//
// Every term is interned in the arena of the signature that built it, so two
// Term handles from the same signature are equal exactly when the terms are
// structurally equal. Variables carry their sort, which makes the per-sort
// variable pools disjoint by construction.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace catwb::msa {

struct SortId {
  std::uint32_t value = 0;
  friend auto operator<=>(SortId, SortId) = default;
};

struct SymbolId {
  std::uint32_t value = 0;
  friend auto operator<=>(SymbolId, SymbolId) = default;
};

/// f : A_1, ..., A_n -> B. A symbol with no arguments is a constant.
struct FunctionSymbol {
  std::string name;
  std::vector<SortId> args;
  SortId result;

  bool isConstant() const { return args.empty(); }
};

class TermNode;
class TermArena;

class Term {
public:
  Term() = default;

  explicit operator bool() const { return node_ != nullptr; }

  bool isVariable() const;
  SortId sort() const;
  /// Head symbol; only meaningful for applications.
  SymbolId symbol() const;
  /// Variable name; only meaningful for variables.
  const std::string &variableName() const;
  std::span<const Term> args() const;
  /// Node count.
  std::size_t size() const;
  /// Dense id, unique within the owning signature.
  std::uint64_t id() const;

  const TermNode *node() const { return node_; }

  friend bool operator==(Term a, Term b) { return a.node_ == b.node_; }

private:
  friend class TermArena;
  explicit Term(const TermNode *node) : node_(node) {}
  const TermNode *node_ = nullptr;
};

struct TermHash {
  std::size_t operator()(Term t) const noexcept {
    return std::hash<const void *>{}(t.node());
  }
};

/// Orders terms by interning id (creation order).
struct TermIdLess {
  bool operator()(Term a, Term b) const { return a.id() < b.id(); }
};

class TermNode {
public:
  bool variable = false;
  SortId sort;
  SymbolId symbol;
  std::string name;
  std::vector<Term> args;
  std::size_t size = 1;
  std::uint64_t id = 0;
  std::size_t hash = 0;
};

/// Raised when an application violates a symbol's arity. `path` is the
/// sequence of argument positions leading from the root to the offending
/// application.
class IllSorted : public std::runtime_error {
public:
  IllSorted(std::string message, std::vector<std::size_t> path)
      : std::runtime_error(std::move(message)), path_(std::move(path)) {}
  const std::vector<std::size_t> &path() const { return path_; }

private:
  std::vector<std::size_t> path_;
};

class SortMismatch : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class Signature {
public:
  Signature();
  ~Signature();
  Signature(const Signature &) = delete;
  Signature &operator=(const Signature &) = delete;

  SortId addSort(std::string name);
  SymbolId addSymbol(std::string name, std::vector<SortId> args, SortId result);

  std::size_t sortCount() const { return sortNames_.size(); }
  std::size_t symbolCount() const { return symbols_.size(); }
  const std::string &sortName(SortId s) const { return sortNames_.at(s.value); }
  const FunctionSymbol &symbol(SymbolId f) const { return symbols_.at(f.value); }
  std::optional<SortId> findSort(std::string_view name) const;
  std::optional<SymbolId> findSymbol(std::string_view name) const;

  /// The variable `name` drawn from the pool X_sort.
  Term variable(std::string_view name, SortId sort) const;
  /// Builds f(args); throws IllSorted when the arguments do not fit.
  Term apply(SymbolId f, std::span<const Term> args) const;
  Term apply(SymbolId f, std::initializer_list<Term> args) const {
    return apply(f, std::span<const Term>(args.begin(), args.size()));
  }
  Term constant(SymbolId c) const { return apply(c, {}); }
  /// Looks up f(args) without interning it.
  std::optional<Term> find(SymbolId f, std::span<const Term> args) const;

  std::size_t internedCount() const;

  std::string show(Term t) const;

private:
  std::vector<std::string> sortNames_;
  std::vector<FunctionSymbol> symbols_;
  std::unordered_map<std::string, SortId> sortIndex_;
  std::unordered_map<std::string, SymbolId> symbolIndex_;
  std::unique_ptr<TermArena> arena_;
};

/// s ≈ t : A
struct Equation {
  Term lhs;
  Term rhs;
  SortId sort;

  friend bool operator==(const Equation &, const Equation &) = default;
};

/// Throws SortMismatch when the two sides have different sorts.
Equation makeEquation(Term lhs, Term rhs);
std::string show(const Signature &sig, const Equation &eq);

/// Untyped syntax, checked by sortOf before it becomes a Term.
struct PreTerm {
  struct Var {
    std::string name;
    SortId sort;
  };
  struct App {
    SymbolId symbol;
    std::vector<PreTerm> args;
  };
  std::variant<Var, App> node;

  static PreTerm var(std::string name, SortId sort) {
    return PreTerm{Var{std::move(name), sort}};
  }
  static PreTerm app(SymbolId f, std::vector<PreTerm> args = {}) {
    return PreTerm{App{f, std::move(args)}};
  }
};

/// The unique sort assigned by the typing judgment; throws IllSorted.
SortId sortOf(const PreTerm &t, const Signature &sig);
/// Checks and interns.
Term elaborate(const PreTerm &t, const Signature &sig);

/// s[r/x]. Throws SortMismatch if sort(r) differs from sort(x).
Term substitute(const Signature &sig, Term s, Term x, Term r);
/// Simultaneous substitution.
Term substitute(const Signature &sig, Term s,
                const std::unordered_map<Term, Term, TermHash> &subst);

/// Free variables ordered by first occurrence (left to right).
std::vector<Term> variablesOf(Term t);
void variablesOf(Term t, std::vector<Term> &out);
bool isClosed(Term t);

/// Subterm at the given argument path, if the path exists.
std::optional<Term> subtermAt(Term t, std::span<const std::size_t> path);
/// First occurrence path of `sub` in `t`.
std::optional<std::vector<std::size_t>> findOccurrence(Term t, Term sub);

/// Maps a term onto another signature by symbol and sort names.
Term transport(Term t, const Signature &from, const Signature &to);

} // namespace catwb::msa
