#include "catwb/fincat/examples.hpp"

#include <functional>
#include <map>
#include <tuple>
#include <stdexcept>

namespace catwb::fincat {

namespace {

using Fn = std::vector<int>;

void allFunctions(int a, int b, Fn &cur, std::vector<Fn> &out) {
  if (static_cast<int>(cur.size()) == a) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v < b; ++v) {
    cur.push_back(v);
    allFunctions(a, b, cur, out);
    cur.pop_back();
  }
}

std::string genericName(int a, int b, const Fn &f) {
  std::string s = "m" + std::to_string(a) + "_" + std::to_string(b);
  if (!f.empty()) {
    s += "_";
    for (int v : f)
      s += std::to_string(v);
  }
  return s;
}

FinCategory buildSkeleton(const std::vector<int> &cards, std::string catName,
                          const std::function<std::string(int, int, const Fn &)> &name) {
  FinCategory cat(std::move(catName));
  std::map<int, ObjId> obj;
  for (int n : cards) {
    if (n < 0 || obj.count(n))
      throw std::invalid_argument("cardinalities must be distinct and nonnegative");
    obj[n] = cat.addObject("n" + std::to_string(n));
  }
  std::map<std::tuple<int, int, Fn>, MorId> ids;
  for (int a : cards) {
    for (int b : cards) {
      std::vector<Fn> fns;
      Fn cur;
      allFunctions(a, b, cur, fns);
      for (const Fn &f : fns)
        ids[{a, b, f}] = cat.addMorphism(name(a, b, f), obj.at(a), obj.at(b));
    }
  }
  for (int a : cards) {
    Fn id;
    for (int i = 0; i < a; ++i)
      id.push_back(i);
    cat.setIdentity(obj.at(a), ids.at({a, a, id}));
  }
  for (const auto &[kf, f] : ids) {
    for (const auto &[kg, g] : ids) {
      const auto &[fa, fb, ff] = kf;
      const auto &[ga, gb, gg] = kg;
      if (fb != ga)
        continue;
      Fn h;
      for (int v : ff)
        h.push_back(gg[v]);
      cat.setComposite(g, f, ids.at({fa, gb, h}));
    }
  }
  return cat;
}

} // namespace

FinCategory finSetSkeleton(int maxCard) {
  if (maxCard < 0)
    throw std::invalid_argument("negative cardinality bound");
  std::vector<int> cards;
  for (int n = 0; n <= maxCard; ++n)
    cards.push_back(n);
  return buildSkeleton(cards, "FinSet" + std::to_string(maxCard), genericName);
}

FinCategory finSetCategory(const std::vector<int> &cardinalities) {
  std::string name = "FinSet";
  for (int n : cardinalities)
    name += "_" + std::to_string(n);
  return buildSkeleton(cardinalities, name, genericName);
}

FinCategory delta() {
  static const std::map<std::string, std::string> conventional = {
      {"m0_0", "id0"},     {"m0_1", "e01"},     {"m0_2", "e02"},   {"m1_1_0", "id1"},
      {"m1_2_0", "inl"},   {"m1_2_1", "inr"},   {"m2_1_00", "t21"}, {"m2_2_01", "id2"},
      {"m2_2_10", "swap"}, {"m2_2_00", "c0"},   {"m2_2_11", "c1"}};
  FinCategory cat = buildSkeleton({0, 1, 2}, "delta", [](int a, int b, const Fn &f) {
    return conventional.at(genericName(a, b, f));
  });
  cat.setName("delta");
  return cat;
}

FinCategory posetCategory(const std::vector<std::string> &objects,
                          const std::vector<std::pair<int, int>> &leq) {
  std::size_t n = objects.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    le[i][i] = true;
  for (auto [a, b] : leq)
    le.at(a).at(b) = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j])
          le[i][j] = true;
  FinCategory cat("poset");
  for (const auto &o : objects)
    cat.addObject(o);
  std::vector<std::vector<std::int64_t>> mor(n, std::vector<std::int64_t>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le[i][j])
        mor[i][j] = cat.addMorphism(objects[i] + "_" + objects[j], static_cast<ObjId>(i),
                                    static_cast<ObjId>(j));
  for (std::size_t i = 0; i < n; ++i)
    cat.setIdentity(static_cast<ObjId>(i), static_cast<MorId>(mor[i][i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (mor[i][j] >= 0 && mor[j][k] >= 0)
          cat.setComposite(static_cast<MorId>(mor[j][k]), static_cast<MorId>(mor[i][j]),
                           static_cast<MorId>(mor[i][k]));
  return cat;
}

} // namespace catwb::fincat
