#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace pg = posetgame;
using namespace posetgame::test;

namespace {

pg::CompressionMap identity_map(const pg::Poset& p) {
  std::vector<pg::ElementId> labels(p.size());
  for (pg::ElementId i = 0; i < p.size(); ++i) labels[i] = i;
  return pg::require_compressing(pg::verify_order_compressing(p, p, labels));
}

pg::CompressionMap fixture_map(const std::string& name) {
  return pg::require_compressing(pg::load_fixture(name).verify());
}

template <class F>
pg::Errc error_code(F&& f) {
  try {
    f();
  } catch (const pg::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return pg::Errc::InternalInconsistency;
}

// Random poset on 1..max_n elements.
pg::Poset small_random(std::mt19937_64& rng, std::size_t max_n) {
  return pg::random_poset(1 + rng() % max_n, rng);
}

}  // namespace

TEST(Verify, IdentityMapVerifies) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 100; ++i) {
    auto p = pg::random_poset(i % 9, rng);
    EXPECT_TRUE(identity_map(p).verified);
  }
}

TEST(Verify, Figure3Verifies) {
  auto r = pg::load_fixture("fig3_map").verify();
  ASSERT_TRUE(std::holds_alternative<pg::CompressionMap>(r));
}

TEST(Verify, Figure4RejectedWithReplayableWitness) {
  auto fx = pg::load_fixture("fig4_map");
  auto r = fx.verify();
  ASSERT_TRUE(std::holds_alternative<pg::ViolationReport>(r));
  const auto& v = std::get<pg::ViolationReport>(r);
  EXPECT_EQ(v.kind, pg::ViolationKind::ConditionFails);
  ASSERT_TRUE(v.z.has_value());
  EXPECT_GE(v.condition, 1);
  EXPECT_LE(v.condition, 3);
  // Replay the triple against the definition.
  const auto& src = fx.poset();
  const auto& tgt = fx.blocks[1].poset;
  std::vector<pg::ElementId> f(src.size());
  for (const auto& [e, t] : fx.blocks[0].labels) f[src.at(e)] = tgt.at(t);
  EXPECT_EQ(pg::detail::failed_condition(src, tgt, f, v.x, v.y, *v.z), v.condition);
  EXPECT_EQ(v.describe(src), "labels-equal-condition-fails at (r1, r2, b2) condition 3");
}

TEST(Verify, HomomorphismFailures) {
  auto c = pg::chain(2);
  auto anti = pg::antichain(2);
  auto r = pg::verify_order_compressing(c, anti, std::vector<pg::ElementId>{0, 1});
  ASSERT_TRUE(std::holds_alternative<pg::ViolationReport>(r));
  EXPECT_EQ(std::get<pg::ViolationReport>(r).kind, pg::ViolationKind::NotHomomorphism);
  auto s = pg::verify_order_compressing(anti, c, std::vector<pg::ElementId>{0, 1});
  ASSERT_TRUE(std::holds_alternative<pg::ViolationReport>(s));
  EXPECT_EQ(std::get<pg::ViolationReport>(s).kind, pg::ViolationKind::NotOrderReflecting);
}

TEST(Verify, LabelErrors) {
  auto p = pg::chain(2);
  EXPECT_EQ(error_code([&] { pg::verify_order_compressing(p, p, std::vector<pg::ElementId>{0}); }),
            pg::Errc::PartialLabeling);
  EXPECT_EQ(error_code([&] { pg::verify_order_compressing(p, p, std::vector<pg::ElementId>{0, 5}); }),
            pg::Errc::LabelNotInTarget);
  using Named = std::vector<std::pair<std::string, std::string>>;
  EXPECT_EQ(error_code([&] { pg::verify_order_compressing(p, p, Named{{"c0", "c0"}}); }), pg::Errc::PartialLabeling);
  EXPECT_EQ(error_code([&] { pg::verify_order_compressing(p, p, Named{{"c0", "c0"}, {"c1", "zz"}}); }),
            pg::Errc::LabelNotInTarget);
  EXPECT_EQ(error_code([&] { pg::verify_order_compressing(p, p, Named{{"c0", "c0"}, {"zz", "c1"}}); }),
            pg::Errc::UnknownElement);
}

TEST(Factor, Examples) {
  auto p = diamond();
  pg::Factorization id(identity_map(p));
  for (pg::ElementId q = 0; q < p.size(); ++q) EXPECT_EQ(pg::factor(id, q).size(), 1u);
  EXPECT_THROW(pg::factor(id, 9), pg::Error);

  pg::Factorization fz(fixture_map("fig3_map"));
  auto blue = pg::factor(fz, fz.target().at("blue"));
  EXPECT_TRUE(pg::isomorphic(blue, pg::chain(3)));

  pg::Factorization six(fixture_map("fig6"));
  for (pg::ElementId q = 0; q < six.target().size(); ++q) EXPECT_EQ(pg::grundy(pg::factor(six, q)), 0u);
}

TEST(Factor, UnverifiedMapRejected) {
  pg::CompressionMap m{pg::chain(1), pg::chain(1), {0}, false};
  EXPECT_EQ(error_code([&] { pg::Factorization fz(m); }), pg::Errc::HypothesesNotMet);
}

TEST(LexicographicSum, BuildsVerifiedMap) {
  auto m = pg::lexicographic_sum(vee_shape(), {pg::chain(2), pg::antichain(2), diamond()});
  EXPECT_TRUE(m.verified);
  EXPECT_EQ(m.source.size(), 8u);
  EXPECT_TRUE(m.source.less(m.source.at("a_c0"), m.source.at("c_top")));
  EXPECT_FALSE(m.source.comparable(m.source.at("b_a0"), m.source.at("c_bottom")));
}

TEST(ReplaceFactor, SelfReplacementIsIsomorphic) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 50; ++i) {
    auto q = small_random(rng, 4);
    std::vector<pg::Poset> parts;
    for (std::size_t k = 0; k < q.size(); ++k) parts.push_back(small_random(rng, 3));
    pg::Factorization fz(pg::lexicographic_sum(q, parts));
    pg::for_each_bit(q.maximal_elements(q.full_mask()), [&](pg::ElementId alpha) {
      auto r = pg::replace_factor(fz, alpha, pg::factor(fz, alpha));
      EXPECT_TRUE(pg::isomorphic(r.poset, fz.source()));
      EXPECT_TRUE(r.map.verified);
    });
  }
}

TEST(ReplaceFactor, NimberTwoFactorByChainTwo) {
  // Λ has nimber 2; swapping it for a 2-chain keeps the whole nimber.
  auto m = pg::lexicographic_sum(pg::chain(2), {pg::antichain(3), lambda_shape()});
  pg::Factorization fz(m);
  auto top = fz.target().at("c1");
  auto r = pg::replace_factor(fz, top, pg::chain(2));
  EXPECT_EQ(pg::grundy(r.poset), pg::grundy(fz.source()));
  EXPECT_EQ(pg::grundy_naive(r.poset), pg::grundy_naive(fz.source()));
}

TEST(ReplaceFactor, Figure7MiddleToDiamond) {
  pg::Factorization fz(fixture_map("fig7_mid"));
  auto blue = fz.target().at("blue");
  EXPECT_EQ(pg::grundy(pg::factor(fz, blue)), 1u);
  auto r = pg::replace_factor(fz, blue, pg::chain(1));
  EXPECT_TRUE(pg::isomorphic(r.poset, pg::load_fixture("fig7_right").poset()));
  EXPECT_EQ(pg::grundy(r.poset), 3u);
}

TEST(ReplaceFactor, Figure8ZeroFactorToEmpty) {
  auto fx = pg::load_fixture("fig8_left");
  pg::Factorization fz(pg::require_compressing(fx.verify()));
  auto blue = fz.target().at("blue");
  EXPECT_EQ(pg::grundy(pg::factor(fz, blue)), 0u);
  auto r = pg::replace_factor(fz, blue, pg::Poset{});
  EXPECT_TRUE(pg::isomorphic(r.poset, pg::load_fixture("fig8_mid").poset()));
  EXPECT_EQ(pg::grundy(r.poset), pg::grundy(fz.source()));
}

TEST(ReplaceFactor, Preconditions) {
  pg::Factorization fz(pg::lexicographic_sum(pg::chain(2), {pg::chain(1), pg::chain(1)}));
  EXPECT_EQ(error_code([&] { pg::replace_factor(fz, 0, pg::chain(1)); }), pg::Errc::AlphaNotMaximal);

  // These labelings are not compressing, so they are marked verified by hand
  // to reach the precondition checks.
  auto n = n_shape();
  auto q = pg::antichain(2);
  pg::CompressionMap bad{n, q, {0, 1, 1, 1}, true};
  pg::Factorization fb(bad);
  EXPECT_EQ(error_code([&] { pg::replace_factor(fb, 0, pg::chain(1)); }), pg::Errc::FactorNotUpSet);

  // Uniform up-set but an outside element below only part of it.
  pg::CompressionMap mixed{make({"a", "b", "c", "d"}, {{"a", "b"}, {"d", "c"}}), pg::antichain(2), {0, 1, 1, 0}, true};
  pg::Factorization fm(mixed);
  EXPECT_EQ(error_code([&] { pg::replace_factor(fm, 1, pg::chain(1)); }), pg::Errc::InconsistentExternalRelations);
}

TEST(FactorEquivalence, Examples) {
  auto m = fixture_map("fig7_mid");
  auto blue = m.target.at("blue");
  auto same = pg::check_factor_equivalence(m, m, blue);
  EXPECT_TRUE(same.nimbers_equal);
  EXPECT_TRUE(same.factors_equal);

  auto f = pg::lexicographic_sum(pg::chain(2), {pg::chain(1), pg::chain(1)});
  auto g = pg::lexicographic_sum(pg::chain(2), {pg::chain(1), pg::chain(2)});
  auto r = pg::check_factor_equivalence(f, g, 1);
  EXPECT_FALSE(r.nimbers_equal);
  EXPECT_FALSE(r.factors_equal);
}

TEST(FactorEquivalence, Figure7MiddleAndRight) {
  auto mid = fixture_map("fig7_mid");
  pg::Factorization fz(mid);
  auto blue = mid.target.at("blue");
  auto right = pg::replace_factor(fz, blue, pg::chain(1)).map;
  auto r = pg::check_factor_equivalence(mid, right, blue);
  EXPECT_TRUE(r.nimbers_equal);
  EXPECT_TRUE(r.factors_equal);
}

TEST(FactorEquivalence, Figure7RedFactorIsNotMaximal) {
  auto left = fixture_map("fig7_left");
  auto mid = fixture_map("fig7_mid");
  EXPECT_EQ(error_code([&] { pg::check_factor_equivalence(left, mid, left.target.at("red")); }),
            pg::Errc::HypothesesNotMet);
}

TEST(AllZeroFactor, Examples) {
  pg::Factorization six(fixture_map("fig6"));
  EXPECT_EQ(pg::all_zero_factor_classify(six), pg::FactorVerdict::P);
  pg::Factorization point(identity_map(pg::chain(1)));
  EXPECT_EQ(pg::all_zero_factor_classify(point), pg::FactorVerdict::Unknown);
  pg::Factorization piles(pg::lexicographic_sum(pg::antichain(2), {pg::chain(1), pg::chain(1)}));
  EXPECT_EQ(pg::all_zero_factor_classify(piles), pg::FactorVerdict::Unknown);
  EXPECT_EQ(pg::grundy(piles.source()), 0u);
}

TEST(OptionSetPreservation, Examples) {
  auto m = fixture_map("fig3_map");
  EXPECT_TRUE(pg::check_option_set_preservation(m, m));
  auto left = fixture_map("fig7_left");
  auto mid = fixture_map("fig7_mid");
  EXPECT_TRUE(pg::check_option_set_preservation(left, mid));
  EXPECT_EQ(pg::option_value_set(pg::factor(pg::Factorization(left), 0)), (pg::OptionValueSet{0, 2}));
  EXPECT_EQ(pg::grundy(left.source), 3u);
  EXPECT_EQ(pg::grundy(mid.source), 3u);

  auto a = pg::lexicographic_sum(pg::chain(1), {pg::chain(1)});
  auto b = pg::lexicographic_sum(pg::chain(1), {pg::chain(2)});
  EXPECT_FALSE(pg::check_option_set_preservation(a, b));
  EXPECT_EQ(error_code([&] { pg::check_option_set_preservation(a, left); }), pg::Errc::TargetMismatch);
}

TEST(MoveCorrespondence, Examples) {
  auto m = fixture_map("fig3_map");
  for (pg::ElementId x = 0; x < m.source.size(); ++x) {
    EXPECT_TRUE(pg::check_move_correspondence(m, m, m.label(x), x, x));
  }
  auto left = fixture_map("fig7_left");
  auto mid = fixture_map("fig7_mid");
  auto red = left.target.at("red");
  int matched = 0;
  pg::for_each_bit(left.preimage(red), [&](pg::ElementId a) {
    pg::for_each_bit(mid.preimage(red), [&](pg::ElementId b) {
      const auto fa = left.preimage(red);
      const auto gb = mid.preimage(red);
      if (pg::grundy(left.source.induced(fa & ~left.source.up_set(a))) !=
          pg::grundy(mid.source.induced(gb & ~mid.source.up_set(b)))) {
        EXPECT_EQ(error_code([&] { pg::check_move_correspondence(left, mid, red, a, b); }), pg::Errc::HypothesesNotMet);
        return;
      }
      ++matched;
      EXPECT_TRUE(pg::check_move_correspondence(left, mid, red, a, b));
    });
  });
  EXPECT_GT(matched, 0);
}

TEST(MoveCorrespondence, BlowUpInstances) {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    auto q = small_random(rng, 3);
    std::vector<pg::Poset> parts;
    for (std::size_t k = 0; k < q.size(); ++k) parts.push_back(small_random(rng, 3));
    auto f = pg::lexicographic_sum(q, parts);
    const auto alpha = static_cast<pg::ElementId>(rng() % q.size());
    const auto idx = static_cast<pg::ElementId>(rng() % parts[alpha].size());
    auto swapped = parts;
    swapped[alpha] = pg::blow_up(parts[alpha], idx, 1 + rng() % 2);
    auto g = pg::lexicographic_sum(q, swapped);
    pg::for_each_bit(f.preimage(alpha), [&](pg::ElementId a) {
      pg::for_each_bit(g.preimage(alpha), [&](pg::ElementId b) {
        if (pg::grundy(f.source.induced(f.preimage(alpha) & ~f.source.up_set(a))) !=
            pg::grundy(g.source.induced(g.preimage(alpha) & ~g.source.up_set(b)))) {
          return;
        }
        ++checked;
        EXPECT_TRUE(pg::check_move_correspondence(f, g, alpha, a, b));
      });
    });
  }
  EXPECT_GT(checked, 50);
}

TEST(BlowUp, Examples) {
  auto three = pg::blow_up(pg::chain(1), 0, 1);
  EXPECT_TRUE(pg::isomorphic(three, pg::antichain(3)));
  EXPECT_EQ(pg::option_value_set(three), (pg::OptionValueSet{0}));

  auto c = pg::chain(2);
  auto top = pg::blow_up(c, 1, 1);
  EXPECT_EQ(top.size(), 4u);
  EXPECT_TRUE(pg::isomorphic(top, pg::ordinal_sum(pg::chain(1), pg::antichain(3))));
  EXPECT_EQ(pg::option_value_set(top), pg::option_value_set(c));

  auto d = pg::blow_up(diamond(), 1, 2);
  EXPECT_EQ(d.size(), 8u);
  EXPECT_THROW(pg::blow_up(c, 0, 0), pg::Error);
  EXPECT_THROW(pg::blow_up(c, 4, 1), pg::Error);
}

TEST(BlowUp, PreservesOptionSetsOnSmallPosets) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& p : pg::unlabeled_posets(n)) {
      const auto base = pg::option_value_set(p);
      for (pg::ElementId q = 0; q < p.size(); ++q) {
        for (std::size_t k = 1; k <= 2; ++k) EXPECT_EQ(pg::option_value_set(pg::blow_up(p, q, k)), base);
      }
    }
  }
}

TEST(FindCompressions, Examples) {
  auto one = pg::find_compressions(pg::chain(1), 4);
  ASSERT_EQ(one.size(), 1u);

  auto two = pg::find_compressions(pg::antichain(2), 4);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].target.size(), 1u);
  EXPECT_EQ(two[1].target.size(), 2u);
  for (const auto& m : two) EXPECT_TRUE(m.verified);

  EXPECT_EQ(error_code([] { pg::find_compressions(pg::antichain(13), 2); }), pg::Errc::PosetTooLargeForSearch);
}

TEST(FindCompressions, Figure3ColoringIsFound) {
  auto fx = pg::load_fixture("fig3_map");
  auto f1 = pg::require_compressing(fx.verify());
  auto found = pg::find_compressions(fx.poset(), 4);
  bool hit = false;
  for (const auto& m : found) {
    if (m.target.size() != f1.target.size()) continue;
    bool same_partition = true;
    for (pg::ElementId x = 0; x < f1.labels.size(); ++x) {
      for (pg::ElementId y = 0; y < f1.labels.size(); ++y) {
        same_partition = same_partition && ((f1.label(x) == f1.label(y)) == (m.label(x) == m.label(y)));
      }
    }
    hit = hit || (same_partition && pg::isomorphic(m.target, f1.target));
  }
  EXPECT_TRUE(hit);
}

TEST(FindCompressions, ResultsVerifyAndPartition) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 20; ++i) {
    auto p = pg::random_poset(1 + i % 6, rng);
    for (const auto& m : pg::find_compressions(p, 3)) {
      EXPECT_TRUE(std::holds_alternative<pg::CompressionMap>(pg::verify_order_compressing(m.source, m.target, m.labels)));
      pg::Mask all = 0;
      for (pg::ElementId q = 0; q < m.target.size(); ++q) {
        EXPECT_EQ(all & m.preimage(q), 0u);
        all |= m.preimage(q);
        EXPECT_NE(m.preimage(q), 0u);
      }
      EXPECT_EQ(all, p.full_mask());
    }
  }
}

TEST(CompressionProperties, RestrictionClosure) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 60; ++i) {
    auto q = small_random(rng, 4);
    std::vector<pg::Poset> parts;
    for (std::size_t k = 0; k < q.size(); ++k) parts.push_back(small_random(rng, 3));
    auto m = pg::lexicographic_sum(q, parts);
    for (pg::ElementId p = 0; p < m.source.size(); ++p) {
      const pg::Mask keep = m.source.full_mask() & ~m.source.up_set(p);
      std::vector<pg::ElementId> labels;
      pg::for_each_bit(keep, [&](pg::ElementId x) { labels.push_back(m.label(x)); });
      auto r = pg::verify_order_compressing(m.source.induced(keep), q, labels);
      EXPECT_TRUE(std::holds_alternative<pg::CompressionMap>(r));
    }
  }
}

TEST(CompressionProperties, VerifiedMapsAreLexicographicSums) {
  // Any verified labeling rebuilds to an isomorphic lexicographic sum.
  for (const auto& p : pg::unlabeled_posets(5)) {
    for (const auto& m : pg::find_compressions(p, 3)) {
      pg::Factorization fz(m);
      std::vector<pg::Poset> parts;
      for (pg::ElementId q = 0; q < m.target.size(); ++q) parts.push_back(pg::factor(fz, q));
      EXPECT_TRUE(pg::isomorphic(pg::lexicographic_sum(m.target, parts).source, p));
    }
  }
}

TEST(CompressionProperties, AllZeroImpliesZero) {
  std::mt19937_64 rng(73);
  int zero = 0;
  for (int i = 0; i < 300; ++i) {
    auto q = small_random(rng, 4);
    std::vector<pg::Poset> parts;
    for (std::size_t k = 0; k < q.size(); ++k) {
      parts.push_back(rng() % 2 ? pg::antichain(2 * (rng() % 2)) : small_random(rng, 3));
    }
    pg::Factorization fz(pg::lexicographic_sum(q, parts));
    if (pg::all_zero_factor_classify(fz) == pg::FactorVerdict::P) {
      ++zero;
      EXPECT_EQ(pg::grundy_naive(fz.source()), 0u);
    }
  }
  EXPECT_GT(zero, 10);
}

TEST(CompressionProperties, FactorNimbersDecideWholeNimbers) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 100; ++i) {
    auto q = small_random(rng, 3);
    std::vector<pg::Poset> parts;
    for (std::size_t k = 0; k < q.size(); ++k) parts.push_back(small_random(rng, 3));
    pg::Factorization fz(pg::lexicographic_sum(q, parts));
    const auto maxes = q.maximal_elements(q.full_mask());
    pg::ElementId alpha = 0;
    for (pg::ElementId a = 0; a < q.size(); ++a) {
      if ((maxes >> a) & 1U) alpha = a;
    }
    auto r = pg::replace_factor(fz, alpha, small_random(rng, 4));
    auto eq = pg::check_factor_equivalence(fz.map, r.map, alpha);
    EXPECT_EQ(eq.nimbers_equal, pg::grundy_naive(fz.source()) == pg::grundy_naive(r.poset));
  }
}
