#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "posetgame/compression.hpp"
#include "posetgame/text_format.hpp"

namespace posetgame {

/// Verifies the labeling carried by blocks[0] against the companion target
/// block blocks[1].
inline VerifyResult verify_labeled_blocks(const std::vector<PosetBlock>& blocks) {
  if (blocks.size() < 2) throw Error(Errc::BadParameter, "a labeled source block and a target block are required");
  if (blocks[0].labels.empty() && !blocks[0].poset.empty()) {
    throw Error(Errc::PartialLabeling, "source block '" + blocks[0].name + "' carries no labels");
  }
  return verify_order_compressing(blocks[0].poset, blocks[1].poset, blocks[0].labels);
}

/// A poset file transcribed from one of the figures, together with the
/// `# expect ...` lines from its comment header.
struct Fixture {
  std::string name;
  std::filesystem::path path;
  std::vector<PosetBlock> blocks;
  /// Tokens following `expect` on each expectation line.
  std::vector<std::vector<std::string>> expectations;

  const Poset& poset() const { return blocks.at(0).poset; }

  bool has_map() const { return blocks.size() >= 2 && !blocks[0].labels.empty(); }

  VerifyResult verify() const { return verify_labeled_blocks(blocks); }

  const PosetBlock& block(const std::string& block_name) const {
    for (const auto& b : blocks) {
      if (b.name == block_name) return b;
    }
    throw Error(Errc::MissingFixture, "fixture " + name + " has no block '" + block_name + "'");
  }
};

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "fig1_left", "fig2_nim",  "fig3_map",  "fig4_map",   "fig5_A",    "fig5_Q",   "fig5_B",
      "fig6",      "fig7_left", "fig7_mid",  "fig7_right", "fig8_left", "fig8_mid",
  };
  return names;
}

#ifdef POSETGAME_FIXTURE_DIR
inline std::filesystem::path default_fixture_dir() { return POSETGAME_FIXTURE_DIR; }
#else
inline std::filesystem::path default_fixture_dir() { return "fixtures"; }
#endif

inline Fixture load_fixture(const std::string& name, const std::filesystem::path& dir = default_fixture_dir()) {
  Fixture fx;
  fx.name = name;
  fx.path = dir / (name + ".poset");
  std::ifstream in(fx.path);
  if (!in) throw Error(Errc::MissingFixture, "cannot open " + fx.path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  fx.blocks = parse_poset_text(buf.str());
  if (fx.blocks.empty()) throw Error(Errc::MissingFixture, fx.path.string() + " holds no poset");
  for (const auto& c : fx.blocks.front().comments) {
    std::istringstream words(c);
    std::string first;
    if (!(words >> first) || first != "expect") continue;
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    fx.expectations.push_back(std::move(tokens));
  }
  return fx;
}

inline std::vector<Fixture> load_fixtures(const std::filesystem::path& dir = default_fixture_dir()) {
  std::vector<Fixture> out;
  for (const auto& n : fixture_names()) out.push_back(load_fixture(n, dir));
  return out;
}

}  // namespace posetgame
