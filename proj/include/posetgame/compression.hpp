#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "posetgame/grundy.hpp"
#include "posetgame/poset.hpp"

namespace posetgame {

/// A labeling f: P -> Q. `verified` is only ever set by
/// verify_order_compressing.
struct CompressionMap {
  Poset source;
  Poset target;
  std::vector<ElementId> labels;
  bool verified = false;

  ElementId label(ElementId x) const { return labels.at(x); }

  /// Preimage of q as a mask over the source.
  Mask preimage(ElementId q) const {
    Mask m = 0;
    for (ElementId x = 0; x < labels.size(); ++x) {
      if (labels[x] == q) m |= bit(x);
    }
    return m;
  }

  std::vector<std::pair<std::string, std::string>> named_labels() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (ElementId x = 0; x < labels.size(); ++x) out.emplace_back(source.name(x), target.name(labels[x]));
    return out;
  }
};

enum class ViolationKind {
  /// f(x) = f(y) but one of the three per-z conditions fails.
  ConditionFails,
  /// x < y in P while f(x) < f(y) does not hold in Q.
  NotHomomorphism,
  /// f(x) < f(y) in Q while x < y does not hold in P.
  NotOrderReflecting,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::ConditionFails: return "labels-equal-condition-fails";
    case ViolationKind::NotHomomorphism: return "labels-differ-not-homomorphism";
    case ViolationKind::NotOrderReflecting: return "labels-differ-not-order-reflecting";
  }
  return "unknown";
}

/// First failure found by the deterministic scan. For ConditionFails the
/// triple (x, y, z) and the failed condition (1-3) are filled in; the other
/// kinds concern the ordered pair (x, y) alone and carry condition 0.
struct ViolationReport {
  ViolationKind kind = ViolationKind::ConditionFails;
  ElementId x = 0;
  ElementId y = 0;
  std::optional<ElementId> z;
  int condition = 0;

  std::string describe(const Poset& p) const {
    std::string s = std::string(to_string(kind)) + " at (" + p.name(x) + ", " + p.name(y);
    if (z) s += ", " + p.name(*z);
    s += ")";
    if (condition != 0) s += " condition " + std::to_string(condition);
    return s;
  }
};

using VerifyResult = std::variant<CompressionMap, ViolationReport>;

namespace detail {

// Returns the failed condition index (1-3) for the triple, or 0.
inline int failed_condition(const Poset& p, const Poset& q, const std::vector<ElementId>& f, ElementId x, ElementId y,
                            ElementId z) {
  const ElementId target = f[x];
  const bool zx = p.less(z, x);
  const bool zy = p.less(z, y);
  if (zx && zy && !q.leq(f[z], target)) return 1;
  if (!zx && !zy && q.less(f[z], target)) return 2;
  if (zx != zy && f[z] != target) return 3;
  return 0;
}

}  // namespace detail

/// Checks that `labels` is order compressing from P to Q.
///
/// Pass 1 scans unordered pairs x < y (by index) with f(x) = f(y) = q and every
/// z for the three conditions: (1) z below both maps to at most q, (2) z below
/// neither does not map strictly below q, (3) z below exactly one maps to q.
/// Pass 2 scans ordered pairs with different labels for x < y ⇔ f(x) < f(y).
/// Together these say P is the lexicographic sum of its factors over Q.
inline VerifyResult verify_order_compressing(const Poset& p, const Poset& q, std::vector<ElementId> labels) {
  if (labels.size() != p.size()) {
    throw Error(Errc::PartialLabeling, std::to_string(labels.size()) + " labels for " + std::to_string(p.size()) +
                                           " elements");
  }
  for (auto l : labels) {
    if (l >= q.size()) throw Error(Errc::LabelNotInTarget, "label index " + std::to_string(l) + " out of range");
  }
  const auto n = static_cast<ElementId>(p.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = x + 1; y < n; ++y) {
      if (labels[x] != labels[y]) continue;
      for (ElementId z = 0; z < n; ++z) {
        if (int c = detail::failed_condition(p, q, labels, x, y, z); c != 0) {
          return ViolationReport{ViolationKind::ConditionFails, x, y, z, c};
        }
      }
    }
  }
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = 0; y < n; ++y) {
      if (x == y || labels[x] == labels[y]) continue;
      const bool in_p = p.less(x, y);
      const bool in_q = q.less(labels[x], labels[y]);
      if (in_p && !in_q) return ViolationReport{ViolationKind::NotHomomorphism, x, y, std::nullopt, 0};
      if (in_q && !in_p) return ViolationReport{ViolationKind::NotOrderReflecting, x, y, std::nullopt, 0};
    }
  }
  return CompressionMap{p, q, std::move(labels), true};
}

/// Name-based labeling: every source element must be labeled exactly once.
inline VerifyResult verify_order_compressing(const Poset& p, const Poset& q,
                                             const std::vector<std::pair<std::string, std::string>>& named) {
  std::vector<std::optional<ElementId>> slots(p.size());
  for (const auto& [elem, target] : named) {
    auto x = p.find(elem);
    if (!x) throw Error(Errc::UnknownElement, "label for unknown element '" + elem + "'");
    auto t = q.find(target);
    if (!t) throw Error(Errc::LabelNotInTarget, "'" + target + "' is not an element of the target");
    if (slots[*x]) throw Error(Errc::PartialLabeling, "element '" + elem + "' labeled twice");
    slots[*x] = *t;
  }
  std::vector<ElementId> labels;
  for (ElementId x = 0; x < p.size(); ++x) {
    if (!slots[x]) throw Error(Errc::PartialLabeling, "element '" + p.name(x) + "' has no label");
    labels.push_back(*slots[x]);
  }
  return verify_order_compressing(p, q, std::move(labels));
}

/// Unwraps a verification result, turning a violation into an error.
inline CompressionMap require_compressing(VerifyResult r) {
  if (auto* v = std::get_if<ViolationReport>(&r)) {
    (void)v;
    throw Error(Errc::ResultNotCompressing, "map is not order compressing");
  }
  return std::get<CompressionMap>(std::move(r));
}

/// The f-factors of a verified map: factors[q] is the preimage of q.
struct Factorization {
  CompressionMap map;
  std::vector<Mask> factors;

  explicit Factorization(CompressionMap m) : map(std::move(m)) {
    if (!map.verified) throw Error(Errc::HypothesesNotMet, "factorization needs a verified map");
    for (ElementId q = 0; q < map.target.size(); ++q) factors.push_back(map.preimage(q));
  }

  const Poset& source() const { return map.source; }
  const Poset& target() const { return map.target; }
};

/// Induced subposet on the preimage of q; empty when q is not in the image.
inline Poset factor(const Factorization& fz, ElementId q) {
  fz.target().check(q);
  return fz.source().induced(fz.factors[q]);
}

/// Lexicographic sum of `parts` over Q: elements of parts[a] lie below those
/// of parts[b] exactly when a < b in Q. Element names are "<q>_<name>". The
/// natural labeling is returned verified.
inline CompressionMap lexicographic_sum(const Poset& q, const std::vector<Poset>& parts) {
  if (parts.size() != q.size()) throw Error(Errc::BadParameter, "need one part per target element");
  std::vector<std::string> names;
  std::vector<ElementId> labels;
  std::vector<std::size_t> offset;
  for (ElementId b = 0; b < q.size(); ++b) {
    offset.push_back(names.size());
    for (const auto& n : parts[b].names()) {
      names.push_back(q.name(b) + "_" + n);
      labels.push_back(b);
    }
  }
  if (names.size() > kMaxElements) throw Error(Errc::PosetTooLarge, "lexicographic sum exceeds the element cap");
  std::vector<Mask> above(names.size(), 0);
  for (ElementId b = 0; b < q.size(); ++b) {
    Mask higher = 0;
    for_each_bit(q.above(b), [&](ElementId c) { higher |= parts[c].full_mask() << offset[c]; });
    for (ElementId i = 0; i < parts[b].size(); ++i) above[offset[b] + i] = higher | (parts[b].above(i) << offset[b]);
  }
  Poset p = Poset::from_above(std::move(names), std::move(above));
  return require_compressing(verify_order_compressing(p, q, std::move(labels)));
}

namespace detail {

// Same element names with the same induced order.
inline bool same_named_subposet(const Poset& a, Mask ma, const Poset& b, Mask mb) {
  if (popcount(ma) != popcount(mb)) return false;
  std::map<std::string, ElementId> in_b;
  for_each_bit(mb, [&](ElementId j) { in_b.emplace(b.name(j), j); });
  bool same = true;
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for_each_bit(ma, [&](ElementId i) {
    auto it = in_b.find(a.name(i));
    if (it == in_b.end()) same = false;
    else pairs.emplace_back(i, it->second);
  });
  if (!same) return false;
  for (auto [i, j] : pairs) {
    for (auto [k, l] : pairs) {
      if (a.less(i, k) != b.less(j, l)) return false;
    }
  }
  return true;
}

inline bool same_target(const CompressionMap& f, const CompressionMap& g) { return f.target == g.target; }

inline void require_verified(const CompressionMap& f, const CompressionMap& g) {
  if (!f.verified || !g.verified) throw Error(Errc::HypothesesNotMet, "both maps must be verified order compressing");
}

}  // namespace detail

/// Result of swapping one factor for another poset.
struct Replacement {
  Poset poset;
  CompressionMap map;
};

/// Deletes the α-factor of the source and inserts `y` in its place.
///
/// Requires α maximal in Q, the α-factor an up-set of the source, and every
/// other element either below all of the factor or below none of it. Elements
/// below the old factor are placed below every element of `y` (when the
/// factor is empty, those labeled strictly below α). The new labeling is
/// re-verified before it is returned.
inline Replacement replace_factor(const Factorization& fz, ElementId alpha, const Poset& y) {
  const Poset& src = fz.source();
  const Poset& q = fz.target();
  q.check(alpha);
  if (!q.is_maximal(alpha)) throw Error(Errc::AlphaNotMaximal, "'" + q.name(alpha) + "' is not maximal in the target");
  const Mask old = fz.factors[alpha];
  if (!src.is_up_set(old)) throw Error(Errc::FactorNotUpSet, "the factor of '" + q.name(alpha) + "' is not an up-set");

  Mask below_factor = 0;
  for (ElementId z = 0; z < src.size(); ++z) {
    if ((old >> z) & 1U) continue;
    const Mask under = src.above(z) & old;
    if (under != 0 && under != old) {
      throw Error(Errc::InconsistentExternalRelations,
                  "'" + src.name(z) + "' lies below part of the factor of '" + q.name(alpha) + "'");
    }
    const bool below = old != 0 ? under == old : q.less(fz.map.label(z), alpha);
    if (below) below_factor |= bit(z);
  }

  std::vector<ElementId> kept;
  for (ElementId z = 0; z < src.size(); ++z) {
    if (!((old >> z) & 1U)) kept.push_back(z);
  }
  if (kept.size() + y.size() > kMaxElements) throw Error(Errc::PosetTooLarge, "replacement exceeds the element cap");

  std::set<std::string> used;
  std::vector<std::string> names;
  for (auto z : kept) {
    names.push_back(src.name(z));
    used.insert(src.name(z));
  }
  for (const auto& n : y.names()) {
    std::string candidate = n;
    while (used.count(candidate)) candidate = "y_" + candidate;
    used.insert(candidate);
    names.push_back(candidate);
  }

  const auto shift = kept.size();
  const Mask y_all = y.full_mask() << shift;
  std::vector<Mask> above(names.size(), 0);
  std::vector<ElementId> labels;
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = 0; b < kept.size(); ++b) {
      if (src.less(kept[a], kept[b])) above[a] |= bit(static_cast<ElementId>(b));
    }
    if ((below_factor >> kept[a]) & 1U) above[a] |= y_all;
    labels.push_back(fz.map.label(kept[a]));
  }
  for (ElementId i = 0; i < y.size(); ++i) {
    above[shift + i] = y.above(i) << shift;
    labels.push_back(alpha);
  }
  Poset result = Poset::from_above(std::move(names), std::move(above));
  auto verdict = verify_order_compressing(result, q, std::move(labels));
  if (auto* v = std::get_if<ViolationReport>(&verdict)) {
    throw Error(Errc::ResultNotCompressing, "replacement map fails verification: " + v->describe(result));
  }
  auto map = std::get<CompressionMap>(std::move(verdict));
  return Replacement{map.source, std::move(map)};
}

/// Outcome of comparing two maps that differ only in their α-factor.
struct FactorEquivalence {
  bool nimbers_equal = false;
  bool factors_equal = false;
};

/// Computes G(A) = G(B) and G(f⁻¹(α)) = G(g⁻¹(α)) independently. Under the
/// hypotheses (both maps verified over the same Q, α maximal in Q with a
/// maximal element of A in its factor, all other factors identical by name and
/// order) the two must agree; disagreement raises InternalInconsistency.
inline FactorEquivalence check_factor_equivalence(const CompressionMap& f, const CompressionMap& g, ElementId alpha) {
  detail::require_verified(f, g);
  if (!detail::same_target(f, g)) throw Error(Errc::HypothesesNotMet, "maps have different targets");
  const Poset& q = f.target;
  q.check(alpha);
  if (!q.is_maximal(alpha)) throw Error(Errc::HypothesesNotMet, "'" + q.name(alpha) + "' is not maximal in the target");
  const Mask fa = f.preimage(alpha);
  if ((f.source.maximal_elements(f.source.full_mask()) & fa) == 0) {
    throw Error(Errc::HypothesesNotMet, "the factor of '" + q.name(alpha) + "' holds no maximal element of the source");
  }
  for (ElementId beta = 0; beta < q.size(); ++beta) {
    if (beta == alpha) continue;
    if (!detail::same_named_subposet(f.source, f.preimage(beta), g.source, g.preimage(beta))) {
      throw Error(Errc::HypothesesNotMet, "factors of '" + q.name(beta) + "' differ");
    }
  }
  FactorEquivalence r;
  r.nimbers_equal = grundy(f.source) == grundy(g.source);
  r.factors_equal = grundy(f.source.induced(fa)) == grundy(g.source.induced(g.preimage(alpha)));
  if (r.nimbers_equal != r.factors_equal) {
    throw Error(Errc::InternalInconsistency, "factor nimbers and whole nimbers disagree on equality");
  }
  return r;
}

enum class FactorVerdict { P, Unknown };

/// P when every factor has nimber 0 (the whole poset then has nimber 0);
/// otherwise no claim is made.
inline FactorVerdict all_zero_factor_classify(const Factorization& fz) {
  for (ElementId q = 0; q < fz.target().size(); ++q) {
    if (grundy(factor(fz, q)) != 0) return FactorVerdict::Unknown;
  }
  return FactorVerdict::P;
}

/// Returns whether every pair of corresponding factors has the same option
/// value set. When it does, A* = B* is checked directly and a mismatch raises
/// InternalInconsistency.
inline bool check_option_set_preservation(const CompressionMap& f, const CompressionMap& g) {
  if (!detail::same_target(f, g)) throw Error(Errc::TargetMismatch, "maps have different targets");
  detail::require_verified(f, g);
  for (ElementId beta = 0; beta < f.target.size(); ++beta) {
    if (option_value_set(f.source.induced(f.preimage(beta))) != option_value_set(g.source.induced(g.preimage(beta)))) {
      return false;
    }
  }
  if (option_value_set(f.source) != option_value_set(g.source)) {
    throw Error(Errc::InternalInconsistency, "per-factor option sets match but whole option sets differ");
  }
  return true;
}

/// Moves a in the α-factor of A and b in the α-factor of B whose factor-local
/// results have equal nimbers must give equal whole-poset nimbers when all
/// factor option value sets agree.
inline bool check_move_correspondence(const CompressionMap& f, const CompressionMap& g, ElementId alpha, ElementId a,
                                      ElementId b) {
  detail::require_verified(f, g);
  if (!detail::same_target(f, g)) throw Error(Errc::HypothesesNotMet, "maps have different targets");
  f.target.check(alpha);
  f.source.check(a);
  g.source.check(b);
  const Mask fa = f.preimage(alpha);
  const Mask ga = g.preimage(alpha);
  if (!((fa >> a) & 1U) || !((ga >> b) & 1U)) {
    throw Error(Errc::HypothesesNotMet, "moves must lie in the factors of '" + f.target.name(alpha) + "'");
  }
  for (ElementId beta = 0; beta < f.target.size(); ++beta) {
    if (option_value_set(f.source.induced(f.preimage(beta))) != option_value_set(g.source.induced(g.preimage(beta)))) {
      throw Error(Errc::HypothesesNotMet, "option value sets of the '" + f.target.name(beta) + "' factors differ");
    }
  }
  GrundyEngine engine;
  const Nimber local_a = engine.grundy(f.source.induced(fa & ~f.source.up_set(a)));
  const Nimber local_b = engine.grundy(g.source.induced(ga & ~g.source.up_set(b)));
  if (local_a != local_b) throw Error(Errc::HypothesesNotMet, "factor-local results have different nimbers");
  const bool equal = engine.grundy(f.source, f.source.full_mask() & ~f.source.up_set(a)) ==
                     engine.grundy(g.source, g.source.full_mask() & ~g.source.up_set(b));
  if (!equal) throw Error(Errc::InternalInconsistency, "corresponding moves lead to different nimbers");
  return true;
}

/// Replaces q with 2n+1 pairwise incomparable copies q_0..q_{2n}, each with
/// q's relations to every other element. Copy 0 keeps q's index; the others
/// are appended.
inline Poset blow_up(const Poset& q, ElementId target, std::size_t n) {
  q.check(target);
  if (n == 0) throw Error(Errc::BadParameter, "blow-up needs n >= 1");
  const std::size_t extra = 2 * n;
  if (q.size() + extra > kMaxElements) throw Error(Errc::PosetTooLarge, "blow-up exceeds the element cap");
  std::vector<std::string> names = q.names();
  std::set<std::string> used(names.begin(), names.end());
  auto fresh = [&](std::size_t k) {
    std::string s = q.name(target) + "_" + std::to_string(k);
    while (used.count(s)) s += "_";
    used.insert(s);
    return s;
  };
  names[target] = fresh(0);
  for (std::size_t k = 1; k <= extra; ++k) names.push_back(fresh(k));

  Mask copies = bit(target);
  for (std::size_t k = 0; k < extra; ++k) copies |= bit(static_cast<ElementId>(q.size() + k));
  std::vector<Mask> above(names.size(), 0);
  for (ElementId i = 0; i < q.size(); ++i) {
    above[i] = q.above(i);
    if (q.less(i, target)) above[i] |= copies;
  }
  for (std::size_t k = 0; k < extra; ++k) above[q.size() + k] = q.above(target);
  return Poset::from_above(std::move(names), std::move(above));
}

/// Every order-compressing map of P onto a quotient with at most
/// `max_factors` blocks. Candidates are set partitions of P; the target
/// order is the one the blocks induce (block a below block b when some
/// element of a is below some element of b), skipping partitions whose
/// induced relation is cyclic. Results are sorted by block count and then by
/// the restricted-growth string of the partition. Target elements are named
/// q0, q1, ... in order of first appearance.
inline std::vector<CompressionMap> find_compressions(const Poset& p, std::size_t max_factors) {
  constexpr std::size_t kSearchCap = 12;
  if (p.size() > kSearchCap) {
    throw Error(Errc::PosetTooLargeForSearch, std::to_string(p.size()) + " elements exceeds the search cap of 12");
  }
  const auto n = p.size();
  std::vector<CompressionMap> found;
  if (n == 0) {
    found.push_back(require_compressing(verify_order_compressing(p, Poset{}, std::vector<ElementId>{})));
    return found;
  }
  std::vector<ElementId> rgs(n, 0);
  auto try_partition = [&](std::size_t blocks) {
    std::vector<Mask> block_above(blocks, 0);
    for (ElementId x = 0; x < n; ++x) {
      for_each_bit(p.above(x), [&](ElementId y) {
        if (rgs[x] != rgs[y]) block_above[rgs[x]] |= bit(rgs[y]);
      });
    }
    std::vector<std::string> names;
    for (std::size_t b = 0; b < blocks; ++b) names.push_back("q" + std::to_string(b));
    Poset q;
    try {
      q = Poset::from_above(std::move(names), std::move(block_above));
    } catch (const Error& e) {
      if (e.code() == Errc::CycleDetected) return;
      throw;
    }
    auto r = verify_order_compressing(p, q, rgs);
    if (auto* m = std::get_if<CompressionMap>(&r)) found.push_back(std::move(*m));
  };
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == n) {
      try_partition(blocks);
      return;
    }
    for (std::size_t b = 0; b <= blocks && b < max_factors; ++b) {
      rgs[i] = static_cast<ElementId>(b);
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (max_factors > 0) rec(rec, 0, 0);
  std::stable_sort(found.begin(), found.end(), [](const CompressionMap& a, const CompressionMap& b) {
    return a.target.size() < b.target.size();
  });
  return found;
}

}  // namespace posetgame
