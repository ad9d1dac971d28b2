#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catwb/msa/term.hpp"

namespace catwb::msa {

/// A finite Σ-algebra. Carrier elements of a sort are 0..n-1 with optional
/// display names; each symbol has a table over the product of its argument
/// carriers in row-major order. A table entry of kUndefined marks a partial
/// operation.
class FinAlgebra {
public:
  static constexpr int kUndefined = -1;

  explicit FinAlgebra(std::shared_ptr<const Signature> sig);

  const Signature &signature() const { return *sig_; }
  std::shared_ptr<const Signature> signaturePtr() const { return sig_; }

  void setCarrier(SortId sort, std::vector<std::string> elementNames);
  void setCarrierSize(SortId sort, std::size_t n);
  std::size_t carrierSize(SortId sort) const { return carriers_.at(sort.value).size(); }
  const std::string &elementName(SortId sort, std::size_t e) const {
    return carriers_.at(sort.value).at(e);
  }
  const std::vector<std::string> &carrier(SortId sort) const { return carriers_.at(sort.value); }

  /// Number of argument tuples of f.
  std::size_t tableSize(SymbolId f) const;
  std::size_t tableIndex(SymbolId f, std::span<const int> args) const;
  void setTable(SymbolId f, std::vector<int> table);
  const std::vector<int> &table(SymbolId f) const { return tables_.at(f.value); }
  void setEntry(SymbolId f, std::span<const int> args, int value);

  std::optional<int> apply(SymbolId f, std::span<const int> args) const;

  using Assignment = std::unordered_map<Term, int, TermHash>;
  /// Value of t under the assignment; nullopt if a partial operation is
  /// undefined along the way or a variable is unassigned.
  std::optional<int> evaluate(Term t, const Assignment &env) const;

  /// Empty when every table has the right length and entries lie in the
  /// result carrier (or are undefined).
  std::vector<std::string> wellFormednessErrors() const;
  bool isTotal() const;

private:
  std::shared_ptr<const Signature> sig_;
  std::vector<std::vector<std::string>> carriers_;
  std::vector<std::vector<int>> tables_;
};

/// An assignment under which the two sides differ. Both sides undefined
/// counts as agreement; exactly one side undefined is a violation.
std::optional<FinAlgebra::Assignment> findViolation(const FinAlgebra &alg, const Equation &eq);

/// Validity of an equation in a finite algebra. Homomorphisms out of the
/// open term algebra are determined by where they send variables, so
/// quantifying over all assignments of the free variables is the same as
/// quantifying over all such homomorphisms.
bool satisfies(const FinAlgebra &alg, const Equation &eq);

/// Per-sort maps between two algebras over the same signature.
struct AlgebraHom {
  std::vector<std::vector<int>> components;
};

/// Checks every homomorphism square by exhaustion; returns a description
/// of the first failing (symbol, argument tuple), if any.
std::optional<std::string> homomorphismViolation(const FinAlgebra &from, const FinAlgebra &to,
                                                 const AlgebraHom &phi);

} // namespace catwb::msa
