#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "posetgame/poset.hpp"

namespace posetgame {

/// Canonical encoding of a poset up to isomorphism (names ignored).
///
/// Individualization-refinement: an ordered partition of the elements is
/// refined until every element of a cell has the same number of strict lower
/// and upper neighbours in every cell. The search then individualizes each
/// element of the first non-singleton cell in turn and refines again. Each
/// discrete leaf orders the elements; the form is the least relation sequence
/// over all leaves. Leaves with equal sequences yield automorphisms, and
/// branches in the same orbit of the automorphisms fixing the current path
/// are skipped, as are twins (equal strict up- and down-sets).
using CanonicalForm = std::vector<std::uint8_t>;

namespace detail {

class Canonizer {
 public:
  explicit Canonizer(const Poset& p) : p_(p), n_(p.size()) {}

  CanonicalForm run() {
    if (n_ == 0) return {0};
    std::vector<std::vector<ElementId>> cells(1);
    for (ElementId i = 0; i < n_; ++i) cells[0].push_back(i);
    refine(cells);
    search(cells);
    return best_code_;
  }

 private:
  using Partition = std::vector<std::vector<ElementId>>;
  using Perm = std::vector<ElementId>;

  // Splits cells by neighbour counts per cell until stable. Subcells keep the
  // order of their signatures, so the result commutes with relabeling.
  void refine(Partition& cells) const {
    for (;;) {
      std::vector<Mask> masks;
      for (const auto& c : cells) {
        Mask m = 0;
        for (auto v : c) m |= bit(v);
        masks.push_back(m);
      }
      Partition next;
      for (const auto& c : cells) {
        if (c.size() == 1) {
          next.push_back(c);
          continue;
        }
        std::vector<std::pair<std::vector<int>, ElementId>> keyed;
        for (auto v : c) {
          std::vector<int> sig;
          sig.reserve(2 * masks.size());
          for (auto m : masks) {
            sig.push_back(popcount(p_.below(v) & m));
            sig.push_back(popcount(p_.above(v) & m));
          }
          keyed.emplace_back(std::move(sig), v);
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t k = 0; k < keyed.size(); ++k) {
          if (k == 0 || keyed[k].first != keyed[k - 1].first) next.emplace_back();
          next.back().push_back(keyed[k].second);
        }
      }
      const bool stable = next.size() == cells.size();
      cells = std::move(next);
      if (stable) return;
    }
  }

  CanonicalForm code_of(const Perm& order) const {
    CanonicalForm code;
    code.reserve(1 + n_ * (n_ - 1) / 2);
    code.push_back(static_cast<std::uint8_t>(n_));
    for (std::size_t b = 0; b < n_; ++b) {
      for (std::size_t a = 0; a < b; ++a) {
        const ElementId u = order[a], v = order[b];
        code.push_back(static_cast<std::uint8_t>((p_.less(u, v) ? 1 : 0) | (p_.less(v, u) ? 2 : 0)));
      }
    }
    return code;
  }

  // The automorphism sending leaf `from` onto leaf `to` position by position.
  Perm automorphism(const Perm& from, const Perm& to) const {
    Perm g(n_);
    for (std::size_t k = 0; k < n_; ++k) g[from[k]] = to[k];
    return g;
  }

  void leaf(const Partition& cells) {
    Perm order;
    for (const auto& c : cells) order.push_back(c[0]);
    CanonicalForm code = code_of(order);
    if (!have_best_) {
      first_order_ = best_order_ = order;
      first_code_ = best_code_ = std::move(code);
      have_best_ = true;
      return;
    }
    if (code == first_code_) {
      generators_.push_back(automorphism(first_order_, order));
    } else if (code == best_code_) {
      generators_.push_back(automorphism(best_order_, order));
    } else if (code < best_code_) {
      best_code_ = std::move(code);
      best_order_ = std::move(order);
    }
  }

  // Orbit representative of v under the stored generators that fix every
  // individualized element on the current path.
  ElementId orbit_root(std::vector<ElementId>& parent, ElementId v) const {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }

  std::vector<ElementId> stabilizer_orbits() const {
    std::vector<ElementId> parent(n_);
    for (ElementId i = 0; i < n_; ++i) parent[i] = i;
    for (const auto& g : generators_) {
      bool fixes = std::all_of(path_.begin(), path_.end(), [&](ElementId x) { return g[x] == x; });
      if (!fixes) continue;
      for (ElementId i = 0; i < n_; ++i) {
        auto a = orbit_root(parent, i), b = orbit_root(parent, g[i]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    return parent;
  }

  void search(const Partition& cells) {
    std::size_t target = cells.size();
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (cells[k].size() > 1) {
        target = k;
        break;
      }
    }
    if (target == cells.size()) {
      leaf(cells);
      return;
    }
    std::vector<ElementId> tried;
    std::vector<ElementId> parent;
    std::size_t seen_generators = 0;
    for (auto v : cells[target]) {
      // Generators found in earlier siblings' subtrees also count.
      if (parent.empty() || seen_generators != generators_.size()) {
        parent = stabilizer_orbits();
        seen_generators = generators_.size();
      }
      bool equivalent = std::any_of(tried.begin(), tried.end(), [&](ElementId t) {
        const bool twins = p_.below(t) == p_.below(v) && p_.above(t) == p_.above(v);
        return twins || orbit_root(parent, t) == orbit_root(parent, v);
      });
      if (equivalent) continue;
      tried.push_back(v);
      Partition child;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k != target) {
          child.push_back(cells[k]);
          continue;
        }
        child.push_back({v});
        std::vector<ElementId> rest;
        for (auto w : cells[k]) {
          if (w != v) rest.push_back(w);
        }
        child.push_back(std::move(rest));
      }
      refine(child);
      path_.push_back(v);
      search(child);
      path_.pop_back();
    }
  }

  const Poset& p_;
  std::size_t n_;
  std::vector<ElementId> path_;
  std::vector<Perm> generators_;
  Perm first_order_, best_order_;
  CanonicalForm first_code_, best_code_;
  bool have_best_ = false;
};

}  // namespace detail

inline CanonicalForm canonical_form(const Poset& p) { return detail::Canonizer(p).run(); }

inline bool isomorphic(const Poset& a, const Poset& b) {
  return a.size() == b.size() && a.covers().size() == b.covers().size() && canonical_form(a) == canonical_form(b);
}

/// Rebuilds a poset from its canonical form with names e0, e1, ...
inline Poset from_canonical_form(const CanonicalForm& form) {
  const std::size_t n = form.empty() ? 0 : form[0];
  std::vector<std::string> names;
  std::vector<Mask> above(n, 0);
  std::size_t k = 1;
  for (ElementId v = 0; v < n; ++v) {
    names.push_back("e" + std::to_string(v));
    for (ElementId u = 0; u < v; ++u, ++k) {
      if (form[k] & 1U) above[u] |= bit(v);
      if (form[k] & 2U) above[v] |= bit(u);
    }
  }
  return Poset::from_above(std::move(names), std::move(above));
}

}  // namespace posetgame
