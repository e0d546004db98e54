#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "posetgame/canonical.hpp"
#include "posetgame/poset.hpp"

namespace posetgame {

namespace detail {

inline std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  return names;
}

// Transitively closed relations where i < j implies i precedes j in index
// order (naturally labeled posets), as strict up-set rows.
inline std::vector<std::vector<Mask>> natural_relations(std::size_t n) {
  std::vector<std::pair<ElementId, ElementId>> slots;
  for (ElementId i = 0; i < n; ++i) {
    for (ElementId j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  }
  std::vector<std::vector<Mask>> out;
  const std::uint64_t combos = std::uint64_t{1} << slots.size();
  for (std::uint64_t code = 0; code < combos; ++code) {
    std::vector<Mask> above(n, 0);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if ((code >> s) & 1U) above[slots[s].first] |= bit(slots[s].second);
    }
    bool closed = true;
    for (ElementId i = 0; i < n && closed; ++i) {
      for_each_bit(above[i], [&](ElementId j) { closed = closed && (above[j] & ~above[i]) == 0; });
    }
    if (closed) out.push_back(std::move(above));
  }
  return out;
}

}  // namespace detail

/// Every labeled poset on elements e0..e{n-1}, each exactly once, in a fixed
/// order. Intended for n <= 5 (4231 posets at n = 5).
inline std::vector<Poset> labeled_posets(std::size_t n) {
  if (n > 6) throw Error(Errc::BadParameter, "labeled enumeration is limited to 6 elements");
  std::set<std::vector<Mask>> seen;
  std::vector<ElementId> perm(n);
  for (const auto& rel : detail::natural_relations(n)) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Mask> relabeled(n, 0);
      for (ElementId i = 0; i < n; ++i) {
        for_each_bit(rel[i], [&](ElementId j) { relabeled[perm[i]] |= bit(perm[j]); });
      }
      seen.insert(std::move(relabeled));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::vector<Poset> out;
  out.reserve(seen.size());
  for (const auto& rel : seen) out.push_back(Poset::from_above(detail::default_names(n), rel));
  return out;
}

/// One representative per isomorphism class on n elements, ordered by
/// canonical form.
inline std::vector<Poset> unlabeled_posets(std::size_t n) {
  if (n > 7) throw Error(Errc::BadParameter, "unlabeled enumeration is limited to 7 elements");
  std::set<CanonicalForm> forms;
  for (const auto& rel : detail::natural_relations(n)) {
    forms.insert(canonical_form(Poset::from_above(detail::default_names(n), rel)));
  }
  std::vector<Poset> out;
  out.reserve(forms.size());
  for (const auto& f : forms) out.push_back(from_canonical_form(f));
  return out;
}

/// Random labeled poset: each index pair i < j is related with probability
/// `density`, the result is closed, then labels are shuffled.
template <class Rng>
Poset random_poset(std::size_t n, Rng& rng, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<ElementId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Mask> above(n, 0);
  for (ElementId i = 0; i < n; ++i) {
    for (ElementId j = i + 1; j < n; ++j) {
      if (coin(rng)) above[perm[i]] |= bit(perm[j]);
    }
  }
  return Poset::from_above(detail::default_names(n), std::move(above));
}

template <class Rng>
Poset random_poset(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> density(0.15, 0.6);
  return random_poset(n, rng, density(rng));
}

}  // namespace posetgame
