#include "saturation.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace catwb::completion {

using Kind = theories::SymbolOrigin::Kind;
using fincat::FinCategory;
using fincat::MorId;
using fincat::ObjId;

std::size_t SaturationEngine::NodeHash::operator()(const Node &n) const noexcept {
  std::size_t h = n.symbol * 0x9e3779b97f4a7c15ULL;
  for (auto a : n.args)
    h = (h ^ a) * 0x100000001b3ULL;
  return h;
}

SaturationEngine::SaturationEngine(const theories::Theory &theory, Limits limits)
    : t_(theory), limits_(limits) {}

std::uint32_t SaturationEngine::find(std::uint32_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

std::uint32_t SaturationEngine::addNode(Node n) {
  for (auto &a : n.args)
    a = find(a);
  if (auto it = memo_.find(n); it != memo_.end())
    return find(it->second);
  if (nodes_.size() >= limits_.nodes) {
    exhausted_ = true;
    return std::numeric_limits<std::uint32_t>::max();
  }
  auto id = static_cast<std::uint32_t>(nodes_.size());
  sorts_.push_back(t_.sig->symbol(msa::SymbolId{n.symbol}).result.value);
  memo_.emplace(n, id);
  nodes_.push_back(std::move(n));
  parent_.push_back(id);
  dirty_ = true;
  return id;
}

std::uint32_t SaturationEngine::add(msa::Term t) {
  if (t.isVariable())
    throw std::invalid_argument("saturation works on closed terms");
  Node n{t.symbol().value, {}};
  for (msa::Term a : t.args()) {
    auto c = add(a);
    if (c == std::numeric_limits<std::uint32_t>::max())
      throw std::length_error("saturation node limit reached while seeding");
    n.args.push_back(c);
  }
  auto id = addNode(std::move(n));
  if (id == std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("saturation node limit reached while seeding");
  return id;
}

bool SaturationEngine::merge(std::uint32_t a, std::uint32_t b) {
  if (a == std::numeric_limits<std::uint32_t>::max() ||
      b == std::numeric_limits<std::uint32_t>::max())
    return false;
  a = find(a);
  b = find(b);
  if (a == b)
    return false;
  if (merges_ >= limits_.merges) {
    exhausted_ = true;
    return false;
  }
  ++merges_;
  if (b < a)
    std::swap(a, b);
  parent_[b] = a;
  dirty_ = true;
  return true;
}

void SaturationEngine::rebuild() {
  bool again = true;
  while (again) {
    again = false;
    std::unordered_map<Node, std::uint32_t, NodeHash, NodeEq> fresh;
    fresh.reserve(nodes_.size());
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
      Node key{nodes_[i].symbol, nodes_[i].args};
      for (auto &a : key.args)
        a = find(a);
      auto [it, inserted] = fresh.emplace(key, i);
      if (!inserted && find(it->second) != find(i))
        again |= merge(it->second, i);
    }
    memo_ = std::move(fresh);
    if (exhausted_)
      break;
  }
}

bool SaturationEngine::round() {
  const FinCategory &c = t_.cat();
  const auto &f = *t_.functor;
  dirty_ = false;
  const auto n = static_cast<std::uint32_t>(nodes_.size());
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> members;
  for (std::uint32_t i = 0; i < n; ++i)
    members[find(i)].push_back(i);

  for (std::uint32_t i = 0; i < n && !exhausted_; ++i) {
    const auto origin = t_.origin(msa::SymbolId{nodes_[i].symbol});
    if (origin.kind == Kind::Morphism) {
      MorId m = origin.index;
      std::uint32_t arg = find(nodes_[i].args[0]);
      if (c.isIdentity(m))
        merge(i, arg);
      const auto it = members.find(arg);
      if (it == members.end())
        continue;
      for (std::uint32_t j : it->second) {
        const Node inner = nodes_[j];
        const auto o = t_.origin(msa::SymbolId{inner.symbol});
        if (o.kind == Kind::Morphism) {
          MorId h = c.compose(m, o.index);
          merge(i, addNode({h, {inner.args[0]}}));
        } else if (o.kind == Kind::Constant) {
          int y = f.apply(m, o.element);
          merge(i, addNode({t_.constantSymbol(c.cod(m), y).value, {}}));
        } else if (o.kind == Kind::Pair) {
          const auto &cone = t_.cones[o.index];
          for (MorId k : c.hom(cone.left, c.cod(m)))
            if (c.compose(k, cone.fst) == m)
              merge(i, addNode({k, {inner.args[0]}}));
          for (MorId k : c.hom(cone.right, c.cod(m)))
            if (c.compose(k, cone.snd) == m)
              merge(i, addNode({k, {inner.args[1]}}));
        }
      }
    } else if (origin.kind == Kind::Pair) {
      const auto &cone = t_.cones[origin.index];
      auto left = members.find(find(nodes_[i].args[0]));
      auto right = members.find(find(nodes_[i].args[1]));
      if (left == members.end() || right == members.end())
        continue;
      for (std::uint32_t a : left->second) {
        if (nodes_[a].symbol != cone.fst)
          continue;
        for (std::uint32_t b : right->second)
          if (nodes_[b].symbol == cone.snd && find(nodes_[a].args[0]) == find(nodes_[b].args[0]))
            merge(i, nodes_[a].args[0]);
      }
    } else if (origin.kind == Kind::Constant) {
      for (MorId m = 0; m < c.morphismCount(); ++m) {
        if (c.dom(m) != origin.object)
          continue;
        int y = f.apply(m, origin.element);
        merge(addNode({m, {i}}), addNode({t_.constantSymbol(c.cod(m), y).value, {}}));
      }
    }
  }

  // Eta at apex classes.
  for (std::uint32_t i = 0; i < n && !exhausted_; ++i) {
    std::uint32_t cls = find(i);
    if (cls != i)
      continue;
    ObjId s = sorts_[i];
    for (std::size_t k : t_.cones.conesAt(s)) {
      std::uint64_t key = (static_cast<std::uint64_t>(cls) << 20) | k;
      if (!expanded_.insert(key).second)
        continue;
      const auto &cone = t_.cones[k];
      auto sym = t_.coneSymbols[k]->value;
      if (cone.nullary) {
        merge(cls, addNode({sym, {}}));
        continue;
      }
      auto l = addNode({cone.fst, {cls}});
      auto r = addNode({cone.snd, {cls}});
      if (exhausted_)
        break;
      merge(cls, addNode({sym, {l, r}}));
    }
  }
  return dirty_;
}

void SaturationEngine::run(std::uint32_t a, std::uint32_t b) {
  rebuild();
  while (!same(a, b) && !exhausted_) {
    if (rounds_ >= limits_.rounds) {
      exhausted_ = true;
      break;
    }
    ++rounds_;
    bool changed = round();
    rebuild();
    if (!changed) {
      saturated_ = true;
      break;
    }
  }
}

msa::Term SaturationEngine::extract(std::uint32_t cls) {
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
  std::unordered_map<std::uint32_t, std::size_t> cost;
  std::unordered_map<std::uint32_t, std::uint32_t> best;
  auto costOf = [&](std::uint32_t c) {
    auto it = cost.find(find(c));
    return it == cost.end() ? inf : it->second;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
      std::size_t total = 1;
      for (auto a : nodes_[i].args) {
        std::size_t ca = costOf(a);
        if (ca == inf) {
          total = inf;
          break;
        }
        total += ca;
      }
      if (total == inf)
        continue;
      std::uint32_t r = find(i);
      auto it = cost.find(r);
      if (it == cost.end() || total < it->second) {
        cost[r] = total;
        best[r] = i;
        changed = true;
      }
    }
  }
  std::function<msa::Term(std::uint32_t)> build = [&](std::uint32_t c) {
    const Node &node = nodes_[best.at(find(c))];
    std::vector<msa::Term> args;
    for (auto a : node.args)
      args.push_back(build(a));
    return t_.sig->apply(msa::SymbolId{node.symbol}, args);
  };
  return build(cls);
}

} // namespace catwb::completion
