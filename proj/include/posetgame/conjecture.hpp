#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "posetgame/canonical.hpp"
#include "posetgame/enumerate.hpp"
#include "posetgame/grundy.hpp"
#include "posetgame/poset.hpp"
#include "posetgame/text_format.hpp"

namespace posetgame {

/// How the hypothesis "B = 2^n" is read when filtering instances.
enum class BReading {
  /// G(B) is a power of two.
  Nimber,
  /// B is a chain whose length is a power of two.
  Chain,
};

struct ConjectureInstance {
  Poset a;
  Poset b;
  unsigned exponent = 0;
  bool b_weakly_canonical = false;
};

struct ConjectureViolation {
  ElementId a = 0;
  ElementId b = 0;
  Nimber lhs = 0;
  std::uint64_t rhs = 0;
};

struct ConjectureResult {
  ConjectureInstance instance;
  std::uint64_t checked_pairs = 0;
  std::vector<ConjectureViolation> violations;
  /// G(A ⊗ B) = G(A) * G(B).
  bool corollary_holds = false;
};

/// The exponent n with G(B) = 2^n (or |B| = 2^n for the chain reading) when B
/// is admissible, nullopt otherwise. Admissibility also needs B weakly
/// canonical.
inline std::optional<unsigned> admissible_exponent(const Poset& b, BReading reading = BReading::Nimber) {
  GrundyEngine engine;
  const Nimber g = engine.grundy(b);
  const bool weakly_canonical = engine.option_values(b, b.full_mask()).size() == g;
  if (!weakly_canonical) return std::nullopt;
  std::uint64_t measure = g;
  if (reading == BReading::Chain) {
    for (ElementId i = 0; i < b.size(); ++i) {
      if (static_cast<std::size_t>(popcount(b.comparable_with(i))) + 1 != b.size()) return std::nullopt;
    }
    measure = b.size();
  }
  if (measure == 0 || !std::has_single_bit(measure)) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(measure));
}

/// For every (a, b) compares G(A⊗B − (a,b)_≤) with 2^n G(A − a_≤) + G(B − b_≤),
/// in plain integer arithmetic, and records each mismatch.
inline ConjectureResult conjecture_check(const Poset& a, const Poset& b, BReading reading = BReading::Nimber) {
  if (a.size() * b.size() > kMaxElements) throw Error(Errc::PosetTooLarge, "A ⊗ B exceeds the element cap");
  auto exponent = admissible_exponent(b, reading);
  if (!exponent) throw Error(Errc::InadmissibleB, "B fails the power-of-two / weakly-canonical gate");

  ConjectureResult result;
  result.instance = ConjectureInstance{a, b, *exponent, true};
  const Poset product = lex_product(a, b);
  GrundyEngine engine;
  const std::uint64_t scale = std::uint64_t{1} << *exponent;
  const auto nb = static_cast<ElementId>(b.size());
  for (ElementId i = 0; i < a.size(); ++i) {
    const std::uint64_t ga = engine.grundy(a, a.full_mask() & ~a.up_set(i));
    for (ElementId j = 0; j < nb; ++j) {
      const ElementId pair = i * nb + j;
      const Nimber lhs = engine.grundy(product, product.full_mask() & ~product.up_set(pair));
      const std::uint64_t rhs = scale * ga + engine.grundy(b, b.full_mask() & ~b.up_set(j));
      ++result.checked_pairs;
      if (lhs != rhs) result.violations.push_back({i, j, lhs, rhs});
    }
  }
  result.corollary_holds =
      static_cast<std::uint64_t>(engine.grundy(product)) ==
      static_cast<std::uint64_t>(engine.grundy(a)) * static_cast<std::uint64_t>(engine.grundy(b));
  return result;
}

struct SweepParams {
  std::size_t max_a = 3;
  std::size_t max_b = 3;
  /// nullopt: exhaustive over isomorphism classes; k: k random pairs.
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;
  BReading reading = BReading::Nimber;
};

struct Counterexample {
  Poset a;
  Poset b;
  std::vector<ConjectureViolation> violations;
  bool corollary_holds = false;
};

struct SweepReport {
  SweepParams params;
  std::uint64_t admissible = 0;
  std::uint64_t skipped = 0;
  std::uint64_t confirmed = 0;
  std::uint64_t violated = 0;
  std::uint64_t checked_pairs = 0;
  std::vector<Counterexample> counterexamples;
};

/// Runs conjecture_check over every admissible pair (A, B) with
/// 1 <= |A| <= max_a and 1 <= |B| <= max_b. Exhaustive mode walks one
/// representative per isomorphism class in canonical order; sampled mode
/// draws sizes and posets from a seeded generator. Inadmissible pairs are
/// counted as skipped.
inline SweepReport conjecture_sweep(const SweepParams& params) {
  SweepReport report;
  report.params = params;
  auto run = [&](const Poset& a, const Poset& b) {
    if (a.size() * b.size() > kMaxElements || !admissible_exponent(b, params.reading)) {
      ++report.skipped;
      return;
    }
    ++report.admissible;
    auto r = conjecture_check(a, b, params.reading);
    report.checked_pairs += r.checked_pairs;
    if (r.violations.empty()) {
      ++report.confirmed;
    } else {
      ++report.violated;
      report.counterexamples.push_back({a, b, std::move(r.violations), r.corollary_holds});
    }
  };

  if (params.sample) {
    std::mt19937_64 rng(params.seed);
    if (params.max_a == 0 || params.max_b == 0) return report;
    std::uniform_int_distribution<std::size_t> size_a(1, params.max_a);
    std::uniform_int_distribution<std::size_t> size_b(1, params.max_b);
    for (std::size_t k = 0; k < *params.sample; ++k) {
      Poset a = random_poset(size_a(rng), rng);
      Poset b = random_poset(size_b(rng), rng);
      run(a, b);
    }
    return report;
  }

  std::vector<Poset> as;
  std::vector<Poset> bs;
  for (std::size_t n = 1; n <= params.max_a; ++n) {
    for (auto& p : unlabeled_posets(n)) as.push_back(std::move(p));
  }
  for (std::size_t n = 1; n <= params.max_b; ++n) {
    for (auto& p : unlabeled_posets(n)) bs.push_back(std::move(p));
  }
  for (const auto& b : bs) {
    for (const auto& a : as) run(a, b);
  }
  return report;
}

}  // namespace posetgame
