#pragma once

#include <map>
#include <set>
#include <vector>

#include "posetgame/mex.hpp"
#include "posetgame/poset.hpp"
#include "posetgame/position.hpp"

namespace posetgame {

namespace detail {

class NaiveEvaluator {
 public:
  explicit NaiveEvaluator(const Poset& p) : p_(p) {}

  Nimber eval(const std::vector<bool>& alive) {
    if (auto it = memo_.find(alive); it != memo_.end()) return it->second;
    std::set<Nimber> options;
    for (ElementId x = 0; x < alive.size(); ++x) {
      if (!alive[x]) continue;
      std::vector<bool> next = alive;
      for (ElementId y = 0; y < alive.size(); ++y) {
        if (y == x || p_.less(x, y)) next[y] = false;
      }
      options.insert(eval(next));
    }
    Nimber value = mex(options);
    memo_.emplace(alive, value);
    return value;
  }

 private:
  const Poset& p_;
  std::map<std::vector<bool>, Nimber> memo_;
};

}  // namespace detail

/// Reference nimber by plain recursion over every move, with a per-call memo
/// only. Shares no code path with GrundyEngine; meant for small positions.
inline Nimber grundy_naive(const Poset& p, Mask alive) {
  std::vector<bool> live(p.size());
  for (ElementId i = 0; i < p.size(); ++i) live[i] = (alive >> i) & 1U;
  return detail::NaiveEvaluator(p).eval(live);
}

inline Nimber grundy_naive(const Poset& p) { return grundy_naive(p, p.full_mask()); }
inline Nimber grundy_naive(const Position& s) { return grundy_naive(s.root(), s.alive()); }

}  // namespace posetgame
