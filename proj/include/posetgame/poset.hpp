#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "posetgame/error.hpp"

namespace posetgame {

/// Index of an element inside one Poset: 0..n-1 without gaps.
using ElementId = std::uint32_t;

/// Fixed-width element set. Bit i is element i of the root poset.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxElements = 64;

constexpr Mask bit(ElementId i) { return Mask{1} << i; }

constexpr Mask low_mask(std::size_t n) {
  return n >= kMaxElements ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr int popcount(Mask m) { return std::popcount(m); }

/// Calls fn(ElementId) for every set bit of m in ascending order.
template <class Fn>
constexpr void for_each_bit(Mask m, Fn&& fn) {
  while (m != 0) {
    auto i = static_cast<ElementId>(std::countr_zero(m));
    fn(i);
    m &= m - 1;
  }
}

/// A finite strict partial order. Immutable once built.
///
/// Both the transitive closure (as per-element up/down bit sets) and the
/// cover relation are stored: comparability queries hit the closure while
/// serialization and rendering use the covers.
class Poset {
 public:
  Poset() : id_(next_id()) {}

  /// Builds a poset from element names and (lower, upper) pairs. The pairs
  /// may be any generating relation; the closure is computed here.
  static Poset from_covers(std::vector<std::string> names,
                           const std::vector<std::pair<std::string, std::string>>& covers) {
    auto index = index_names(names);
    std::vector<std::pair<ElementId, ElementId>> pairs;
    pairs.reserve(covers.size());
    for (const auto& [lo, hi] : covers) {
      auto l = index.find(lo);
      auto h = index.find(hi);
      if (l == index.end()) throw Error(Errc::UnknownName, "'" + lo + "' is not a declared element");
      if (h == index.end()) throw Error(Errc::UnknownName, "'" + hi + "' is not a declared element");
      pairs.emplace_back(l->second, h->second);
    }
    return from_pairs(std::move(names), pairs);
  }

  /// Same as from_covers but with element indices.
  static Poset from_pairs(std::vector<std::string> names,
                          const std::vector<std::pair<ElementId, ElementId>>& pairs) {
    const auto n = names.size();
    check_size(n);
    std::vector<Mask> above(n, 0);
    for (auto [lo, hi] : pairs) {
      if (lo >= n || hi >= n) throw Error(Errc::UnknownElement, "relation references index out of range");
      above[lo] |= bit(hi);
    }
    return from_above(std::move(names), std::move(above));
  }

  /// Builds a poset from a generating relation given as strict up-sets;
  /// above[i] has bit j set when i < j is asserted.
  static Poset from_above(std::vector<std::string> names, std::vector<Mask> above) {
    const auto n = names.size();
    check_size(n);
    index_names(names);
    if (above.size() != n) throw Error(Errc::BadParameter, "relation size does not match element count");
    for (std::size_t i = 0; i < n; ++i) {
      if ((above[i] & ~low_mask(n)) != 0) throw Error(Errc::UnknownElement, "relation references index out of range");
    }
    // Warshall on bit rows.
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (above[i] & bit(static_cast<ElementId>(k))) above[i] |= above[k];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (above[i] & bit(static_cast<ElementId>(i))) {
        throw Error(Errc::CycleDetected, "relation through '" + names[i] + "' is not acyclic");
      }
    }
    Poset p;
    p.names_ = std::move(names);
    p.above_ = std::move(above);
    p.finish();
    return p;
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  Mask full_mask() const { return low_mask(size()); }

  /// Identity used for memo keys. Copies share it; they are equal values.
  std::uint64_t id() const { return id_; }

  const std::string& name(ElementId i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<ElementId> find(std::string_view name) const {
    for (ElementId i = 0; i < size(); ++i) {
      if (names_[i] == name) return i;
    }
    return std::nullopt;
  }

  ElementId at(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(Errc::UnknownElement, "no element named '" + std::string(name) + "'");
  }

  void check(ElementId i) const {
    if (i >= size()) throw Error(Errc::UnknownElement, "element index " + std::to_string(i) + " out of range");
  }

  /// i <_P j
  bool less(ElementId i, ElementId j) const { return (above_[i] >> j) & 1U; }
  bool leq(ElementId i, ElementId j) const { return i == j || less(i, j); }
  bool comparable(ElementId i, ElementId j) const { return i != j && (less(i, j) || less(j, i)); }

  /// Strict up-set {j : i < j}.
  Mask above(ElementId i) const { return above_[i]; }
  /// Strict down-set {j : j < i}.
  Mask below(ElementId i) const { return below_[i]; }
  Mask comparable_with(ElementId i) const { return above_[i] | below_[i]; }

  /// {i} together with every element above it: what a move on i removes.
  Mask up_set(ElementId i) const {
    check(i);
    return above_[i] | bit(i);
  }

  const std::vector<std::pair<ElementId, ElementId>>& covers() const { return covers_; }

  bool is_down_set(Mask m) const {
    bool ok = (m & ~full_mask()) == 0;
    for_each_bit(m, [&](ElementId i) { ok = ok && (below_[i] & ~m) == 0; });
    return ok;
  }

  bool is_up_set(Mask m) const {
    bool ok = (m & ~full_mask()) == 0;
    for_each_bit(m, [&](ElementId i) { ok = ok && (above_[i] & ~m) == 0; });
    return ok;
  }

  Mask minimal_elements(Mask within) const {
    Mask out = 0;
    for_each_bit(within, [&](ElementId i) {
      if ((below_[i] & within) == 0) out |= bit(i);
    });
    return out;
  }

  Mask maximal_elements(Mask within) const {
    Mask out = 0;
    for_each_bit(within, [&](ElementId i) {
      if ((above_[i] & within) == 0) out |= bit(i);
    });
    return out;
  }

  bool is_maximal(ElementId i) const { return above_[i] == 0; }

  /// Induced subposet on the elements of m, keeping names and relative order.
  Poset induced(Mask m) const {
    if ((m & ~full_mask()) != 0) throw Error(Errc::UnknownElement, "mask has bits outside the poset");
    std::vector<ElementId> keep;
    for_each_bit(m, [&](ElementId i) { keep.push_back(i); });
    std::vector<std::string> names;
    std::vector<Mask> above(keep.size(), 0);
    for (std::size_t a = 0; a < keep.size(); ++a) {
      names.push_back(names_[keep[a]]);
      for (std::size_t b = 0; b < keep.size(); ++b) {
        if (less(keep[a], keep[b])) above[a] |= bit(static_cast<ElementId>(b));
      }
    }
    Poset p;
    p.names_ = std::move(names);
    p.above_ = std::move(above);
    p.finish();
    return p;
  }

  /// Same names in the same order with the same closure.
  friend bool operator==(const Poset& a, const Poset& b) {
    return a.names_ == b.names_ && a.above_ == b.above_;
  }

 private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
  }

  static void check_size(std::size_t n) {
    if (n > kMaxElements) {
      throw Error(Errc::PosetTooLarge, std::to_string(n) + " elements exceeds the cap of " +
                                           std::to_string(kMaxElements));
    }
  }

  static std::unordered_map<std::string, ElementId> index_names(const std::vector<std::string>& names) {
    std::unordered_map<std::string, ElementId> index;
    for (ElementId i = 0; i < names.size(); ++i) {
      if (!index.emplace(names[i], i).second) {
        throw Error(Errc::DuplicateName, "element '" + names[i] + "' declared twice");
      }
    }
    return index;
  }

  // Derives below_ and covers_ from a transitively closed above_.
  void finish() {
    const auto n = size();
    below_.assign(n, 0);
    for (ElementId i = 0; i < n; ++i) {
      for_each_bit(above_[i], [&](ElementId j) { below_[j] |= bit(i); });
    }
    covers_.clear();
    for (ElementId i = 0; i < n; ++i) {
      Mask reach = 0;
      for_each_bit(above_[i], [&](ElementId j) { reach |= above_[j]; });
      for_each_bit(above_[i] & ~reach, [&](ElementId j) { covers_.emplace_back(i, j); });
    }
  }

  std::uint64_t id_;
  std::vector<std::string> names_;
  std::vector<Mask> above_;
  std::vector<Mask> below_;
  std::vector<std::pair<ElementId, ElementId>> covers_;
};

/// Transitive closure recomputed from the cover relation alone.
inline std::vector<Mask> reclose_from_covers(const Poset& p) {
  std::vector<Mask> above(p.size(), 0);
  for (auto [lo, hi] : p.covers()) above[lo] |= bit(hi);
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (above[i] & bit(static_cast<ElementId>(k))) above[i] |= above[k];
    }
  }
  return above;
}

/// A zigzag path witnessing connectivity between its two endpoints.
struct Fence {
  std::vector<ElementId> elements;
  /// ascending[i] is true when elements[i] < elements[i+1].
  std::vector<bool> ascending;
  /// True when consecutive comparabilities change direction at every point.
  bool alternating = true;
};

/// Shortest comparability path from p1 to p2, or nullopt when the two lie in
/// different components. A shortest path has no chords, so it is always an
/// alternating fence; the directions are recorded rather than assumed.
inline std::optional<Fence> find_fence(const Poset& poset, ElementId p1, ElementId p2) {
  poset.check(p1);
  poset.check(p2);
  const auto n = poset.size();
  std::vector<int> parent(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<ElementId> queue{p1};
  seen[p1] = true;
  while (!queue.empty() && !seen[p2]) {
    auto v = queue.front();
    queue.pop_front();
    for_each_bit(poset.comparable_with(v), [&](ElementId w) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = static_cast<int>(v);
        queue.push_back(w);
      }
    });
  }
  if (!seen[p2]) return std::nullopt;
  Fence fence;
  for (auto v = static_cast<int>(p2); v != -1; v = parent[v]) fence.elements.push_back(static_cast<ElementId>(v));
  std::reverse(fence.elements.begin(), fence.elements.end());
  for (std::size_t i = 0; i + 1 < fence.elements.size(); ++i) {
    fence.ascending.push_back(poset.less(fence.elements[i], fence.elements[i + 1]));
    if (i > 0 && fence.ascending[i] == fence.ascending[i - 1]) fence.alternating = false;
  }
  return fence;
}

namespace detail {

inline std::vector<std::string> tagged_names(const Poset& a, const Poset& b) {
  std::vector<std::string> names = a.names();
  names.insert(names.end(), b.names().begin(), b.names().end());
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return names;
  names.clear();
  for (const auto& s : a.names()) names.push_back("L_" + s);
  for (const auto& s : b.names()) names.push_back("R_" + s);
  return names;
}

}  // namespace detail

/// A + B: side by side, no relations across. Names are kept when they do not
/// clash and otherwise tagged with L_/R_.
inline Poset disjoint_sum(const Poset& a, const Poset& b) {
  auto names = detail::tagged_names(a, b);
  std::vector<Mask> above(a.size() + b.size(), 0);
  if (above.size() > kMaxElements) throw Error(Errc::PosetTooLarge, "disjoint sum exceeds the element cap");
  const auto shift = a.size();
  for (ElementId i = 0; i < a.size(); ++i) above[i] = a.above(i);
  for (ElementId i = 0; i < b.size(); ++i) above[shift + i] = b.above(i) << shift;
  return Poset::from_above(std::move(names), std::move(above));
}

/// A : B: every element of A lies below every element of B.
inline Poset ordinal_sum(const Poset& a, const Poset& b) {
  auto names = detail::tagged_names(a, b);
  std::vector<Mask> above(a.size() + b.size(), 0);
  if (above.size() > kMaxElements) throw Error(Errc::PosetTooLarge, "ordinal sum exceeds the element cap");
  const auto shift = a.size();
  const Mask all_b = b.full_mask() << shift;
  for (ElementId i = 0; i < a.size(); ++i) above[i] = a.above(i) | all_b;
  for (ElementId i = 0; i < b.size(); ++i) above[shift + i] = b.above(i) << shift;
  return Poset::from_above(std::move(names), std::move(above));
}

/// A ⊗ B on pairs (a, b), element index a * |B| + b:
/// (a,b) < (a',b') iff a <_A a', or a = a' and b <_B b'.
inline Poset lex_product(const Poset& a, const Poset& b) {
  const auto na = a.size();
  const auto nb = b.size();
  if (na * nb > kMaxElements) throw Error(Errc::PosetTooLarge, "lexicographic product exceeds the element cap");
  std::vector<std::string> names;
  for (ElementId i = 0; i < na; ++i) {
    for (ElementId j = 0; j < nb; ++j) names.push_back(a.name(i) + "_" + b.name(j));
  }
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    for (ElementId i = 0; i < na; ++i) {
      for (ElementId j = 0; j < nb; ++j) names[i * nb + j] = "p" + std::to_string(i) + "_" + std::to_string(j);
    }
  }
  const Mask row = low_mask(nb);
  std::vector<Mask> above(na * nb, 0);
  for (ElementId i = 0; i < na; ++i) {
    Mask higher_rows = 0;
    for_each_bit(a.above(i), [&](ElementId k) { higher_rows |= row << (k * nb); });
    for (ElementId j = 0; j < nb; ++j) above[i * nb + j] = higher_rows | (b.above(j) << (i * nb));
  }
  return Poset::from_above(std::move(names), std::move(above));
}

}  // namespace posetgame
