#pragma once

// L(F): closed terms over the functor theory modulo its equations, never
// materialized. Equality is decided by normalization (eta-long values at
// cone apexes) or, when no canonical form exists, by bounded saturation;
// distinctness is certified by a separating model.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "catwb/completion/gamma.hpp"
#include "catwb/msa/derivation.hpp"
#include "catwb/theories/theory.hpp"

namespace catwb::completion {

using fincat::ConeCollection;
using fincat::FinCategory;
using fincat::MorId;
using fincat::ObjId;

class NoCanonicalForm : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Two factorization routes of a head disagreed.
class EngineIncoherent : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class EngineMode { Nbe, Saturation };
const char *modeName(EngineMode m);

/// A candidate separator: a cone-preserving G with γ : F -> G.
struct Model {
  std::string name;
  FinFunctor target;
  NatTrans gamma;
};

struct EngineConfig {
  EngineMode mode = EngineMode::Nbe;
  /// maxTermSize bounds saturation rounds; maxMerges bounds merges.
  msa::Budget budget{};
  std::size_t maxCarrier = 3;     // enumerated separator carriers
  std::size_t maxGammas = 64;     // transformations tried per target
  std::size_t functorNodes = 200'000;
  std::size_t saturationNodes = 200'000;
  std::vector<Model> models;      // user-supplied separators
};

struct Value {
  std::uint32_t id = 0;
  friend bool operator==(Value, Value) = default;
};

struct ValueNode {
  enum class Kind { Pair, Unit, Const, Stuck } kind = Kind::Const;
  ObjId sort = 0;
  std::uint32_t cone = 0;  // Pair, Unit
  Value left, right;       // Pair
  int element = 0;         // Const
  MorId head = 0;          // Stuck
  Value arg;               // Stuck
};

/// Outcome of comparing normal forms against the bounded oracle.
struct CrossValidation {
  std::size_t terms = 0;
  std::size_t classes = 0;
  std::size_t violations = 0;
  std::string witness;
  bool downgraded = false;
  msa::BudgetReport oracle;
};

struct Separator {
  std::shared_ptr<const Model> model;
  std::string source; // a: F itself, b: representable, c: user, d: enumerated
  int lhs = 0;
  int rhs = 0;
  std::string lhsName;
  std::string rhsName;
};

struct EqResult {
  enum class Kind { Equal, Distinct, Unknown } kind = Kind::Unknown;
  EngineMode engine = EngineMode::Nbe;
  std::string lhsNormal;
  std::string rhsNormal;
  std::optional<Separator> separator;
  msa::BudgetReport budget;
  std::string note;
};
const char *kindName(EqResult::Kind k);

class SaturationEngine;

class ReflectedPresheaf {
public:
  ReflectedPresheaf(std::shared_ptr<const FinCategory> cat, ConeCollection cones,
                    FinFunctor f, EngineConfig config = {});
  ~ReflectedPresheaf();
  ReflectedPresheaf(const ReflectedPresheaf &) = delete;
  ReflectedPresheaf &operator=(const ReflectedPresheaf &) = delete;

  const theories::Theory &theory() const { return theory_; }
  const FinFunctor &source() const { return *theory_.functor; }
  const FinCategory &category() const { return theory_.cat(); }
  const EngineConfig &config() const { return config_; }
  void setMode(EngineMode m) { config_.mode = m; }
  void setBudget(msa::Budget b) { config_.budget = b; }
  void addModel(Model m);

  /// Whether normalization is available, and why not.
  bool hasCanonicalForms() const { return !nbeRefusal_; }
  const std::optional<std::string> &canonicalFormRefusal() const { return nbeRefusal_; }

  /// η: the constant for element a of F(A).
  msa::Term eta(ObjId a, int x) const { return theory_.constant(a, x); }
  /// f(t); throws msa::IllSorted when t has the wrong sort.
  msa::Term act(MorId f, msa::Term t) const;

  /// Throws NoCanonicalForm when the cone collection has an apex cycle or
  /// an object that is the apex of two cones, and EngineIncoherent when two
  /// factorization routes disagree.
  Value normalize(msa::Term t) const;
  msa::Term readback(Value v) const;
  std::string show(Value v) const { return theory_.sig->show(readback(v)); }
  ValueNode node(Value v) const;

  /// Throws msa::SortMismatch on sort mismatch and std::invalid_argument on
  /// open terms.
  EqResult equal(msa::Term s, msa::Term t) const;

  /// A model separating s and t, searched in the fixed order: F itself when
  /// it preserves the cones, representables, user models, enumerated small
  /// cone-preserving functors.
  std::optional<Separator> findSeparator(msa::Term s, msa::Term t) const;

  /// Every oracle class over closed terms within the budget must have a
  /// single normal form. On any mismatch (or incoherence) the engine is
  /// switched to saturation for this theory.
  CrossValidation crossValidate(msa::Budget budget);

  /// All candidate models in search order (built lazily).
  std::size_t candidateCount() const;

private:
  struct Key {
    std::uint64_t a, b;
    friend bool operator==(const Key &, const Key &) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key &k) const noexcept {
      return std::hash<std::uint64_t>{}(k.a * 0x9e3779b97f4a7c15ULL ^ k.b);
    }
  };

  void prepareNbe();
  void closeConstants();
  int rep(ObjId a, int x) const;
  Value intern(const ValueNode &n) const;
  Value expandConstant(ObjId a, int x) const;
  Value eval(msa::Term t) const;
  Value apply(MorId h, Value v) const;
  Value applyToTuple(MorId h, Value v) const;

  void buildCandidates(int stage) const;
  std::optional<Separator> trySeparate(msa::Term s, msa::Term t, std::size_t from,
                                       std::size_t to) const;
  EqResult equalNbe(msa::Term s, msa::Term t) const;
  EqResult equalSaturation(msa::Term s, msa::Term t) const;

  theories::Theory theory_;
  EngineConfig config_;
  std::optional<std::string> nbeRefusal_;

  std::vector<std::optional<std::size_t>> apexCone_; // by object
  std::vector<std::size_t> offset_;                  // constant index base per object
  std::vector<int> constRep_;                        // canonical constant per constant

  mutable std::recursive_mutex mutex_;
  mutable std::vector<ValueNode> values_;
  mutable std::unordered_map<Key, std::uint32_t, KeyHash> valueIndex_;
  mutable std::unordered_map<msa::Term, Value, msa::TermHash> evalMemo_;
  mutable std::unordered_map<Key, Value, KeyHash> applyMemo_;
  mutable std::vector<std::unordered_map<std::uint32_t, int>> tupleConstant_; // per apex object

  struct Candidate {
    std::shared_ptr<const Model> model;
    std::string source;
    std::shared_ptr<const GammaHat> hat;
  };
  mutable std::vector<Candidate> candidates_;
  mutable int candidateStage_ = 0;
};

} // namespace catwb::completion
