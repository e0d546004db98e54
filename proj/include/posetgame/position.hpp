#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "posetgame/poset.hpp"

namespace posetgame {

/// A game state: an order ideal of a shared, immutable root poset.
class Position {
 public:
  Position() : root_(std::make_shared<const Poset>()) {}

  Position(std::shared_ptr<const Poset> root, Mask alive) : root_(std::move(root)), alive_(alive) {
    if (!root_->is_down_set(alive_)) throw Error(Errc::NotAnIdeal, "live set is not downward closed");
  }

  /// The starting position: every element alive.
  static Position full(std::shared_ptr<const Poset> root) {
    const Mask all = root->full_mask();
    return Position(std::move(root), all);
  }

  static Position full(Poset root) { return full(std::make_shared<const Poset>(std::move(root))); }

  const Poset& root() const { return *root_; }
  const std::shared_ptr<const Poset>& root_ptr() const { return root_; }
  Mask alive() const { return alive_; }
  bool empty() const { return alive_ == 0; }
  int live_count() const { return popcount(alive_); }
  bool is_alive(ElementId p) const { return p < root_->size() && ((alive_ >> p) & 1U); }

  /// The live subposet as a standalone poset.
  Poset subposet() const { return root_->induced(alive_); }

  Position with_alive(Mask alive) const { return Position(root_, alive); }

  friend bool operator==(const Position& a, const Position& b) {
    return a.alive_ == b.alive_ && (a.root_ == b.root_ || *a.root_ == *b.root_);
  }

 private:
  std::shared_ptr<const Poset> root_;
  Mask alive_ = 0;
};

/// Live elements {p} ∪ {p' : p < p'} of the position.
inline Mask up_set(const Position& s, ElementId p) { return s.root().up_set(p) & s.alive(); }

/// Removes p and everything above it.
inline Position make_move(const Position& s, ElementId p) {
  s.root().check(p);
  if (!s.is_alive(p)) throw Error(Errc::DeadElement, "'" + s.root().name(p) + "' is not alive");
  return s.with_alive(s.alive() & ~s.root().up_set(p));
}

/// Positions one move away, one per distinct resulting live set, in ascending
/// order of the element that produced them first.
inline std::vector<Position> one_move_options(const Position& s) {
  std::vector<Position> out;
  std::vector<Mask> seen;
  for_each_bit(s.alive(), [&](ElementId p) {
    Mask next = s.alive() & ~s.root().up_set(p);
    if (std::find(seen.begin(), seen.end(), next) == seen.end()) {
      seen.push_back(next);
      out.push_back(s.with_alive(next));
    }
  });
  return out;
}

/// Every proper order ideal of the live subposet, each once: exactly the
/// positions reachable by one or more moves.
inline std::vector<Position> followers(const Position& s) {
  const Poset& root = s.root();
  std::vector<ElementId> order;
  // Ascending down-set size is a linear extension.
  for_each_bit(s.alive(), [&](ElementId p) { order.push_back(p); });
  std::stable_sort(order.begin(), order.end(), [&](ElementId a, ElementId b) {
    return popcount(root.below(a)) < popcount(root.below(b));
  });
  std::vector<Mask> ideals;
  auto rec = [&](auto&& self, std::size_t k, Mask current) -> void {
    if (k == order.size()) {
      if (current != s.alive()) ideals.push_back(current);
      return;
    }
    const ElementId p = order[k];
    self(self, k + 1, current);
    if ((root.below(p) & s.alive() & ~current) == 0) self(self, k + 1, current | bit(p));
  };
  rec(rec, 0, 0);
  std::sort(ideals.begin(), ideals.end());
  std::vector<Position> out;
  out.reserve(ideals.size());
  for (Mask m : ideals) out.push_back(s.with_alive(m));
  return out;
}

/// Live elements connected to `seed` through comparabilities.
inline Mask component_of(const Poset& root, Mask alive, ElementId seed) {
  Mask comp = bit(seed);
  Mask frontier = comp;
  while (frontier != 0) {
    Mask next = 0;
    for_each_bit(frontier, [&](ElementId i) { next |= root.comparable_with(i); });
    next &= alive & ~comp;
    comp |= next;
    frontier = next;
  }
  return comp;
}

/// Connected components of the live subposet, ordered by lowest element.
inline std::vector<Position> components(const Position& s) {
  std::vector<Position> out;
  Mask rest = s.alive();
  while (rest != 0) {
    const auto seed = static_cast<ElementId>(std::countr_zero(rest));
    Mask comp = component_of(s.root(), s.alive(), seed);
    out.push_back(s.with_alive(comp));
    rest &= ~comp;
  }
  return out;
}

}  // namespace posetgame
