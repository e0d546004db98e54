#pragma once

#include <string>
#include <vector>

#include "posetgame/poset.hpp"

namespace posetgame {

/// Total order c0 < c1 < ... < c{m-1}: a single Nim pile of height m.
inline Poset chain(std::size_t m) {
  std::vector<std::string> names;
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (ElementId i = 0; i < m; ++i) {
    names.push_back("c" + std::to_string(i));
    if (i > 0) pairs.emplace_back(i - 1, i);
  }
  return Poset::from_pairs(std::move(names), pairs);
}

inline Poset antichain(std::size_t k) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < k; ++i) names.push_back("a" + std::to_string(i));
  return Poset::from_pairs(std::move(names), {});
}

/// Disjoint chains; pile i is p{i}_0 < p{i}_1 < ...
inline Poset nim(const std::vector<std::size_t>& heights) {
  std::vector<std::string> names;
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (std::size_t pile = 0; pile < heights.size(); ++pile) {
    for (std::size_t level = 0; level < heights[pile]; ++level) {
      auto idx = static_cast<ElementId>(names.size());
      names.push_back("p" + std::to_string(pile) + "_" + std::to_string(level));
      if (level > 0) pairs.emplace_back(idx - 1, idx);
    }
  }
  return Poset::from_pairs(std::move(names), pairs);
}

/// Zigzag on n+1 points: f0 < f1 > f2 < f3 ...
inline Poset fence(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (ElementId i = 0; i <= n; ++i) {
    names.push_back("f" + std::to_string(i));
    if (i > 0) {
      if (i % 2 == 1) pairs.emplace_back(i - 1, i);
      else pairs.emplace_back(i, i - 1);
    }
  }
  return Poset::from_pairs(std::move(names), pairs);
}

/// Product order on {0..m-1} x {0..n-1}; element g{i}_{j} has index i*n + j.
inline Poset grid(std::size_t m, std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (ElementId i = 0; i < m; ++i) {
    for (ElementId j = 0; j < n; ++j) {
      auto idx = static_cast<ElementId>(i * n + j);
      names.push_back("g" + std::to_string(i) + "_" + std::to_string(j));
      if (i > 0) pairs.emplace_back(idx - static_cast<ElementId>(n), idx);
      if (j > 0) pairs.emplace_back(idx - 1, idx);
    }
  }
  return Poset::from_pairs(std::move(names), pairs);
}

/// Chomp board: the m x n grid without its least element (the poisoned square).
inline Poset chomp(std::size_t m, std::size_t n) {
  Poset g = grid(m, n);
  return g.induced(g.full_mask() & ~Mask{1});
}

/// Dispatches a named family. Parameters must be positive except nim pile
/// heights, which may be zero.
inline Poset generate(const std::string& family, const std::vector<std::size_t>& params) {
  auto need = [&](std::size_t count) {
    if (params.size() != count) {
      throw Error(Errc::BadParameter, family + " takes " + std::to_string(count) + " parameter(s)");
    }
    for (auto v : params) {
      if (v == 0) throw Error(Errc::BadParameter, family + " parameters must be positive");
    }
  };
  if (family == "chain") {
    need(1);
    return chain(params[0]);
  }
  if (family == "antichain") {
    need(1);
    return antichain(params[0]);
  }
  if (family == "fence") {
    need(1);
    return fence(params[0]);
  }
  if (family == "grid") {
    need(2);
    return grid(params[0], params[1]);
  }
  if (family == "chomp") {
    need(2);
    return chomp(params[0], params[1]);
  }
  if (family == "nim") {
    if (params.empty()) throw Error(Errc::BadParameter, "nim needs at least one pile height");
    return nim(params);
  }
  throw Error(Errc::BadParameter, "unknown family '" + family + "'");
}

}  // namespace posetgame
