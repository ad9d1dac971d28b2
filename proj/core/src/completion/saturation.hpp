#pragma once

// Bounded equality saturation over closed terms of a functor theory.

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "catwb/msa/derivation.hpp"
#include "catwb/theories/theory.hpp"

namespace catwb::completion {

class SaturationEngine {
public:
  struct Limits {
    std::size_t rounds = 9;
    std::size_t merges = 10000;
    std::size_t nodes = 200'000;
  };

  SaturationEngine(const theories::Theory &theory, Limits limits);

  std::uint32_t add(msa::Term t);
  /// Runs rounds until the two classes meet, nothing changes, or a limit hits.
  void run(std::uint32_t a, std::uint32_t b);
  bool same(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
  /// Smallest term of the class.
  msa::Term extract(std::uint32_t c);

  std::size_t nodeCount() const { return nodes_.size(); }
  std::size_t merges() const { return merges_; }
  std::size_t roundsRun() const { return rounds_; }
  bool exhausted() const { return exhausted_; }
  bool saturated() const { return saturated_; }

private:
  struct Node {
    std::uint32_t symbol;
    std::vector<std::uint32_t> args; // class ids at insertion, canonicalized on rebuild
  };
  struct NodeHash {
    std::size_t operator()(const Node &n) const noexcept;
  };
  struct NodeEq {
    bool operator()(const Node &a, const Node &b) const {
      return a.symbol == b.symbol && a.args == b.args;
    }
  };

  std::uint32_t find(std::uint32_t x);
  std::uint32_t addNode(Node n);
  bool merge(std::uint32_t a, std::uint32_t b);
  void rebuild();
  bool round();
  fincat::ObjId sortOf(std::uint32_t cls) const { return sorts_[cls]; }

  const theories::Theory &t_;
  Limits limits_;
  std::vector<Node> nodes_;          // node i lives in class find(i)
  std::vector<fincat::ObjId> sorts_; // by node
  std::vector<std::uint32_t> parent_;
  std::unordered_map<Node, std::uint32_t, NodeHash, NodeEq> memo_;
  std::unordered_set<std::uint64_t> expanded_; // (class, cone) pairs already eta-expanded
  std::size_t merges_ = 0;
  std::size_t rounds_ = 0;
  bool exhausted_ = false;
  bool saturated_ = false;
  bool dirty_ = false;
};

} // namespace catwb::completion
