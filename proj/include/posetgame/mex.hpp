#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace posetgame {

/// Sprague-Grundy value. Bounded by the live element count, so at most 64.
using Nimber = std::uint32_t;

/// Set of nimbers reachable in one move, kept sorted.
using OptionValueSet = std::set<Nimber>;

/// Least non-negative integer not in `values`.
template <class Range>
Nimber mex(const Range& values) {
  std::vector<bool> present(values.size() + 1, false);
  for (auto v : values) {
    if (v < present.size()) present[v] = true;
  }
  Nimber m = 0;
  while (present[m]) ++m;
  return m;
}

/// mex(S, k): the (k+1)-th smallest non-negative integer missing from S.
/// mex(S, 0) = mex(S); mex(S, k) = mex(S ∪ {mex(S,0), ..., mex(S,k-1)}).
template <class Range>
Nimber mex_k(const Range& values, Nimber k) {
  std::vector<Nimber> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Nimber candidate = 0;
  auto it = sorted.begin();
  for (;;) {
    while (it != sorted.end() && *it < candidate) ++it;
    if (it != sorted.end() && *it == candidate) {
      ++candidate;
      continue;
    }
    if (k == 0) return candidate;
    --k;
    ++candidate;
  }
}

inline Nimber mex(std::initializer_list<Nimber> values) { return mex(std::vector<Nimber>(values)); }
inline Nimber mex_k(std::initializer_list<Nimber> values, Nimber k) { return mex_k(std::vector<Nimber>(values), k); }

}  // namespace posetgame
