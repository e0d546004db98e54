#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "posetgame/json_io.hpp"
#include "test_support.hpp"

namespace pg = posetgame;
using namespace posetgame::test;

namespace {

pg::Errc parse_code(const std::string& text) {
  try {
    pg::parse_poset_text(text);
  } catch (const pg::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed without error";
  return pg::Errc::InternalInconsistency;
}

}  // namespace

TEST(TextFormat, ParsesBlock) {
  auto blocks = pg::parse_poset_text(
      "# leading note\n"
      "poset v\n"
      "elem a b  # trailing\n"
      "elem c\n"
      "cover a c\n"
      "cover b c\n"
      "label a low\n");
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].name, "v");
  EXPECT_EQ(blocks[0].poset, lambda_shape());
  ASSERT_EQ(blocks[0].labels.size(), 1u);
  EXPECT_EQ(blocks[0].labels[0], (std::pair<std::string, std::string>{"a", "low"}));
  ASSERT_EQ(blocks[0].comments.size(), 1u);
  EXPECT_EQ(blocks[0].comments[0], " leading note");
}

TEST(TextFormat, MultipleBlocksAndEmptyPoset) {
  auto blocks = pg::parse_poset_text("poset one\nelem x\n\nposet none\n");
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[1].poset.size(), 0u);
}

TEST(TextFormat, Errors) {
  EXPECT_EQ(parse_code("elem a\n"), pg::Errc::ParseError);
  EXPECT_EQ(parse_code("poset p\nfrob a\n"), pg::Errc::ParseError);
  EXPECT_EQ(parse_code("poset p\nelem a-b\n"), pg::Errc::ParseError);
  EXPECT_EQ(parse_code("poset p\nelem a b\ncover a\n"), pg::Errc::ParseError);
  EXPECT_EQ(parse_code("poset\n"), pg::Errc::ParseError);
  EXPECT_EQ(parse_code("poset p\nelem a b\ncover a b\ncover b a\n"), pg::Errc::CycleDetected);
  EXPECT_EQ(parse_code("poset p\nelem a a\n"), pg::Errc::DuplicateName);
  EXPECT_EQ(parse_code("poset p\nelem a\ncover a z\n"), pg::Errc::UnknownName);
}

TEST(TextFormat, ErrorCarriesLineNumber) {
  try {
    pg::parse_poset_text("poset p\nelem a\n\nbogus\n");
    FAIL();
  } catch (const pg::Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(TextFormat, Identifiers) {
  EXPECT_TRUE(pg::is_identifier("a_1"));
  EXPECT_TRUE(pg::is_identifier("_x"));
  EXPECT_TRUE(pg::is_identifier("1a"));
  EXPECT_FALSE(pg::is_identifier(""));
  EXPECT_FALSE(pg::is_identifier("a.b"));
}

TEST(TextFormat, RoundTrip) {
  std::mt19937_64 rng(89);
  for (int i = 0; i < 200; ++i) {
    auto p = pg::random_poset(i % 12, rng);
    auto text = pg::to_text(p, "r");
    auto back = pg::parse_poset_text(text);
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].poset, p);
    EXPECT_TRUE(pg::isomorphic(back[0].poset, p));
  }
}

TEST(TextFormat, RoundTripWithLabels) {
  auto fx = pg::load_fixture("fig3_map");
  auto text = pg::to_text(fx.poset(), fx.blocks[0].name, fx.blocks[0].labels) +
              pg::to_text(fx.blocks[1].poset, fx.blocks[1].name);
  auto back = pg::parse_poset_text(text);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<pg::CompressionMap>(pg::verify_labeled_blocks(back)));
}

TEST(TextFormat, Stream) {
  std::istringstream in("poset s\nelem a b\ncover a b\n");
  auto blocks = pg::read_poset_stream(in);
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].poset, pg::Poset::from_covers({"a", "b"}, {{"a", "b"}}));
}

TEST(Json, AnalysisShape) {
  auto p = lambda_shape();
  auto j = pg::to_json(pg::analyze(pg::Position::full(p)), p);
  EXPECT_EQ(j["nimber"], 2);
  EXPECT_EQ(j["optionValues"], nlohmann::json::array({0, 1}));
  EXPECT_EQ(j["weaklyCanonical"], true);
  EXPECT_EQ(j["outcome"], "N");
  EXPECT_EQ(j["winningMoves"], nlohmann::json::array({"c"}));
  EXPECT_TRUE(j.contains("positionsExplored"));
}

TEST(Json, VerifyShape) {
  auto fx = pg::load_fixture("fig4_map");
  auto j = pg::to_json(fx.verify(), fx.poset());
  EXPECT_EQ(j["verified"], false);
  EXPECT_EQ(j["violation"]["witness"], nlohmann::json::array({"r1", "r2", "b2"}));
  EXPECT_EQ(j["violation"]["condition"], 3);
  auto ok = pg::load_fixture("fig3_map");
  auto k = pg::to_json(ok.verify(), ok.poset());
  EXPECT_EQ(k["verified"], true);
  EXPECT_TRUE(k["violation"].is_null());
}
