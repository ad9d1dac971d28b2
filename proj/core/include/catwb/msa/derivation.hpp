#pragma once

// Bounded semi-decision for E ⊢ s ≈ t : A.
//
// The universe is every term up to a node-count bound (plus the goal's
// subterms). Axioms are instantiated with universe terms only, and the
// least congruence containing those instances is computed by a
// proof-producing congruence closure. Every positive answer comes with a
// derivation in the rules ax, subst, refl, symm, trans, cong that
// checkTrace replays independently.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "catwb/msa/term.hpp"

namespace catwb::msa {

struct Budget {
  std::size_t maxTermSize = 9;
  std::size_t maxMerges = 10000;
};

struct BudgetReport {
  Budget budget;
  std::size_t universeSize = 0;
  std::size_t instances = 0;
  std::size_t merges = 0;
  bool exhausted = false;

  std::string describe() const;
};

enum class Rule { Ax, Subst, Refl, Symm, Trans, Cong };
const char *ruleName(Rule r);

struct TraceStep {
  Rule rule;
  std::vector<std::size_t> premises;
  Equation conclusion;
};

/// A derivation; the last step concludes the goal.
struct Trace {
  std::vector<TraceStep> steps;

  const Equation &conclusion() const { return steps.back().conclusion; }
  /// One line per step: `rule premise-ids ⟹ equation`. Step ids are line
  /// numbers starting at 0.
  std::string serialize(const Signature &sig) const;
};

/// Replays a trace rule by rule. Returns an error message naming the first
/// bad step, or nullopt when every step is a valid rule instance and the
/// final conclusion is `goal`.
std::optional<std::string> checkTrace(const Signature &sig, std::span<const Equation> axioms,
                                      const Trace &trace, const Equation &goal);

struct Proved {
  Trace trace;
  BudgetReport report;
};
struct Refuted {
  std::string separator;
};
struct Unknown {
  BudgetReport report;
};
using Decision = std::variant<Proved, Refuted, Unknown>;

/// Congruence closure of the axiom instances over a bounded universe.
class BoundedCongruence {
public:
  /// Universe: terms of size <= budget.maxTermSize, with the free variables
  /// of `extra` as additional leaves, plus `extra` and its subterms.
  BoundedCongruence(const Signature &sig, std::vector<Equation> axioms, Budget budget,
                    std::span<const Term> extra = {});

  /// Explicit universe; subterms are added automatically.
  static BoundedCongruence overUniverse(const Signature &sig, std::vector<Equation> axioms,
                                        std::span<const Term> universe, std::size_t maxMerges);

  bool contains(Term t) const { return index_.contains(t.node()); }
  /// False when either term lies outside the universe.
  bool equivalent(Term a, Term b) const;
  /// A checkable derivation of a ≈ b, when equivalent(a, b).
  std::optional<Trace> explain(Term a, Term b) const;

  const std::vector<Term> &universe() const { return terms_; }
  const std::vector<Equation> &axioms() const { return axioms_; }
  const BudgetReport &report() const { return report_; }
  /// Representative universe index of t's class.
  std::uint32_t classOf(Term t) const;
  std::size_t classCount() const;
  /// Classes ordered by their first member; members in universe order.
  std::vector<std::vector<Term>> classes() const;

private:
  struct Justification {
    bool axiom = false;
    std::uint32_t index = 0; // instance index when axiom
    std::uint32_t a = 0;     // endpoints of the justified equation a ≈ b
    std::uint32_t b = 0;
  };
  struct Instance {
    std::uint32_t equation;
    std::vector<std::pair<Term, Term>> binding;
    std::uint32_t lhs;
    std::uint32_t rhs;
  };
  struct Pending {
    std::uint32_t a, b;
    Justification why;
  };

  BoundedCongruence(const Signature &sig, std::vector<Equation> axioms, std::size_t maxMerges);

  void addTerm(Term t);
  void finishUniverse();
  void instantiate();
  void close();
  std::uint32_t find(std::uint32_t x) const;
  std::size_t signatureHash(std::uint32_t t) const;
  bool sameSignature(std::uint32_t t, std::uint32_t u) const;
  std::optional<std::uint32_t> lookupOrInsert(std::uint32_t t);
  void addProofEdge(std::uint32_t a, std::uint32_t b, Justification why);

  friend class TraceBuilder;

  const Signature *sig_;
  std::vector<Equation> axioms_;
  BudgetReport report_;

  std::vector<Term> terms_;
  std::unordered_map<const TermNode *, std::uint32_t> index_;
  std::vector<std::uint32_t> argStart_;
  std::vector<std::uint32_t> args_;

  mutable std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> classSize_;
  std::vector<std::vector<std::uint32_t>> uses_;
  std::unordered_multimap<std::size_t, std::uint32_t> signatures_;

  std::vector<Instance> instances_;
  std::vector<Pending> pending_;

  std::vector<std::int64_t> proofParent_;
  std::vector<Justification> proofWhy_;
};

/// Tri-state answer; Refuted is never produced by this oracle.
Decision derives(const Signature &sig, std::span<const Equation> axioms, const Equation &goal,
                 Budget budget);

} // namespace catwb::msa
