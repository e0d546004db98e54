#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "posetgame/mex.hpp"
#include "posetgame/poset.hpp"
#include "posetgame/position.hpp"

namespace posetgame {

enum class Outcome { P, N };

inline const char* to_string(Outcome o) { return o == Outcome::P ? "P" : "N"; }

struct SearchStats {
  std::uint64_t positions_explored = 0;
  std::uint64_t memo_hits = 0;
};

/// Memoized Sprague-Grundy evaluator.
///
/// Positions are split into connected components at every level and the
/// component values are XOR-combined; only connected positions are expanded
/// and stored. The memo key is (root poset id, live bit set), so one engine
/// can serve many roots.
///
/// Thread safety: an engine instance is single-threaded. The free functions
/// below each use a private engine and may be called concurrently.
class GrundyEngine {
 public:
  Nimber grundy(const Position& s) { return eval(s.root(), s.alive()); }

  Nimber grundy(const Poset& root, Mask alive) {
    if (!root.is_down_set(alive)) throw Error(Errc::NotAnIdeal, "live set is not downward closed");
    return eval(root, alive);
  }

  Nimber grundy(const Poset& p) { return eval(p, p.full_mask()); }

  OptionValueSet option_values(const Poset& root, Mask alive) {
    OptionValueSet out;
    for (Mask next : option_masks(root, alive)) out.insert(eval(root, next));
    return out;
  }

  OptionValueSet option_values(const Position& s) { return option_values(s.root(), s.alive()); }

  const SearchStats& stats() const { return stats_; }
  std::size_t memo_size() const { return memo_.size(); }

  void clear() {
    memo_.clear();
    stats_ = {};
  }

  /// Distinct live sets one move away, ascending popcount then mask value.
  static std::vector<Mask> option_masks(const Poset& root, Mask alive) {
    std::vector<Mask> out;
    for_each_bit(alive, [&](ElementId p) { out.push_back(alive & ~root.up_set(p)); });
    std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
      return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  struct Key {
    std::uint64_t poset;
    Mask alive;
    bool operator==(const Key&) const = default;
  };

  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = k.alive * 0x9E3779B97F4A7C15ULL;
      h ^= k.poset + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
      return static_cast<std::size_t>(h);
    }
  };

  Nimber eval(const Poset& root, Mask alive) {
    Nimber total = 0;
    Mask rest = alive;
    while (rest != 0) {
      const auto seed = static_cast<ElementId>(std::countr_zero(rest));
      const Mask comp = component_of(root, alive, seed);
      total ^= eval_connected(root, comp);
      rest &= ~comp;
    }
    return total;
  }

  Nimber eval_connected(const Poset& root, Mask comp) {
    const int k = popcount(comp);
    if (k <= 1) return static_cast<Nimber>(k);
    // A connected set whose elements are pairwise comparable is a Nim pile.
    bool is_chain = true;
    for_each_bit(comp, [&](ElementId i) { is_chain = is_chain && (root.comparable_with(i) & comp) == (comp & ~bit(i)); });
    if (is_chain) return static_cast<Nimber>(k);

    const Key key{root.id(), comp};
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
    ++stats_.positions_explored;
    std::array<bool, kMaxElements + 2> seen{};
    for (Mask next : option_masks(root, comp)) seen[eval(root, next)] = true;
    Nimber value = 0;
    while (seen[value]) ++value;
    memo_.emplace(key, static_cast<std::uint8_t>(value));
    return value;
  }

  std::unordered_map<Key, std::uint8_t, KeyHash> memo_;
  SearchStats stats_;
};

inline Nimber grundy(const Position& s) { return GrundyEngine{}.grundy(s); }
inline Nimber grundy(const Poset& p) { return GrundyEngine{}.grundy(p); }

/// {G(t) : t one move from s}
inline OptionValueSet option_value_set(const Position& s) { return GrundyEngine{}.option_values(s); }
inline OptionValueSet option_value_set(const Poset& p) { return GrundyEngine{}.option_values(p, p.full_mask()); }

inline bool is_weakly_canonical(const Position& s) {
  GrundyEngine engine;
  return engine.option_values(s).size() == engine.grundy(s);
}

inline Outcome classify(const Position& s) { return grundy(s) == 0 ? Outcome::P : Outcome::N; }

/// Live elements whose move leaves a nimber-0 position, ascending id.
inline std::vector<ElementId> winning_moves(const Position& s, GrundyEngine& engine) {
  std::vector<ElementId> out;
  for_each_bit(s.alive(), [&](ElementId p) {
    if (engine.grundy(s.root(), s.alive() & ~s.root().up_set(p)) == 0) out.push_back(p);
  });
  return out;
}

inline std::vector<ElementId> winning_moves(const Position& s) {
  GrundyEngine engine;
  return winning_moves(s, engine);
}

struct AnalysisReport {
  Nimber nimber = 0;
  OptionValueSet option_values;
  bool weakly_canonical = true;
  Outcome outcome = Outcome::P;
  std::vector<ElementId> winning_moves;
  SearchStats stats;
};

inline AnalysisReport analyze(const Position& s) {
  GrundyEngine engine;
  AnalysisReport r;
  r.nimber = engine.grundy(s);
  r.option_values = engine.option_values(s);
  r.weakly_canonical = r.option_values.size() == r.nimber;
  r.outcome = r.nimber == 0 ? Outcome::P : Outcome::N;
  r.winning_moves = winning_moves(s, engine);
  r.stats = engine.stats();
  return r;
}

/// G(A : B) = mex(A*, G(B)) without building the ordinal sum.
inline Nimber ordinal_sum_grundy(const Poset& a, const Poset& b) {
  GrundyEngine engine;
  return mex_k(engine.option_values(a, a.full_mask()), engine.grundy(b));
}

/// XOR of the pile heights.
inline Nimber nim_value(const std::vector<std::size_t>& heights) {
  Nimber v = 0;
  for (auto h : heights) v ^= static_cast<Nimber>(h);
  return v;
}

}  // namespace posetgame
