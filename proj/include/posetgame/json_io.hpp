#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "posetgame/compression.hpp"
#include "posetgame/conjecture.hpp"
#include "posetgame/grundy.hpp"
#include "posetgame/text_format.hpp"

namespace posetgame {

inline std::vector<std::string> sorted_names(const Poset& p, const std::vector<ElementId>& ids) {
  std::vector<std::string> out;
  for (auto i : ids) out.push_back(p.name(i));
  std::sort(out.begin(), out.end());
  return out;
}

inline nlohmann::json to_json(const AnalysisReport& r, const Poset& root) {
  return {
      {"nimber", r.nimber},
      {"optionValues", std::vector<Nimber>(r.option_values.begin(), r.option_values.end())},
      {"weaklyCanonical", r.weakly_canonical},
      {"outcome", to_string(r.outcome)},
      {"winningMoves", sorted_names(root, r.winning_moves)},
      {"positionsExplored", r.stats.positions_explored},
      {"memoHits", r.stats.memo_hits},
  };
}

/// Verification result with element names resolved against the source.
inline nlohmann::json to_json(const VerifyResult& r, const Poset& source) {
  nlohmann::json j = {{"verified", std::holds_alternative<CompressionMap>(r)}, {"violation", nullptr}};
  if (const auto* v = std::get_if<ViolationReport>(&r)) {
    nlohmann::json witness = {source.name(v->x), source.name(v->y)};
    if (v->z) witness.push_back(source.name(*v->z));
    j["violation"] = {
        {"kind", to_string(v->kind)},
        {"witness", witness},
        {"condition", v->condition},
    };
  }
  return j;
}

inline nlohmann::json to_json(const SweepReport& r) {
  nlohmann::json params = {
      {"maxA", r.params.max_a},
      {"maxB", r.params.max_b},
      {"sample", r.params.sample ? nlohmann::json(*r.params.sample) : nlohmann::json("exhaustive")},
      {"seed", r.params.seed},
      {"bReading", r.params.reading == BReading::Nimber ? "nimber" : "chain"},
  };
  nlohmann::json counters = nlohmann::json::array();
  for (const auto& c : r.counterexamples) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : c.violations) {
      vs.push_back({{"a", c.a.name(v.a)}, {"b", c.b.name(v.b)}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    }
    counters.push_back({
        {"a", to_text(c.a, "A")},
        {"b", to_text(c.b, "B")},
        {"violations", vs},
        {"corollaryHolds", c.corollary_holds},
    });
  }
  return {
      {"parameters", params},
      {"counts",
       {{"admissible", r.admissible}, {"skipped", r.skipped}, {"confirmed", r.confirmed}, {"violated", r.violated}}},
      {"checkedPairs", r.checked_pairs},
      {"counterexamples", counters},
  };
}

}  // namespace posetgame
