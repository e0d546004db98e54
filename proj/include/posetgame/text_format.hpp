#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "posetgame/poset.hpp"

namespace posetgame {

/// One `poset <name>` block of the text format.
///
///     poset <name>
///     elem <id> [<id> ...]
///     cover <lower> <upper>
///     label <elem> <factor-id>
///
/// `#` starts a comment, blank lines are ignored and ids match [A-Za-z0-9_]+.
struct PosetBlock {
  std::string name;
  Poset poset;
  /// (element, target element) pairs from `label` lines, in file order.
  std::vector<std::pair<std::string, std::string>> labels;
  /// Comment lines (without the leading '#') that precede the block header.
  std::vector<std::string> comments;
};

inline bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

namespace detail {

struct BlockBuilder {
  std::string name;
  std::vector<std::string> elems;
  std::vector<std::pair<std::string, std::string>> covers;
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<std::string> comments;

  PosetBlock build() {
    return PosetBlock{name, Poset::from_covers(elems, covers), std::move(labels), std::move(comments)};
  }
};

inline Error parse_error(std::size_t line, const std::string& msg) {
  return Error(Errc::ParseError, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace detail

inline std::vector<PosetBlock> parse_poset_text(std::string_view text) {
  std::vector<PosetBlock> blocks;
  std::optional<detail::BlockBuilder> current;
  std::vector<std::string> pending_comments;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      if (!current) pending_comments.push_back(line.substr(hash + 1));
      line.erase(hash);
    }
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if (!is_identifier(tok[i])) throw detail::parse_error(lineno, "invalid identifier '" + tok[i] + "'");
    }
    const auto& kw = tok[0];
    if (kw == "poset") {
      if (tok.size() != 2) throw detail::parse_error(lineno, "expected `poset <name>`");
      if (current) blocks.push_back(current->build());
      current.emplace();
      current->name = tok[1];
      current->comments = std::move(pending_comments);
      pending_comments.clear();
      continue;
    }
    if (!current) throw detail::parse_error(lineno, "expected `poset <name>` before '" + kw + "'");
    if (kw == "elem") {
      if (tok.size() < 2) throw detail::parse_error(lineno, "`elem` needs at least one id");
      current->elems.insert(current->elems.end(), tok.begin() + 1, tok.end());
    } else if (kw == "cover") {
      if (tok.size() != 3) throw detail::parse_error(lineno, "expected `cover <lower> <upper>`");
      current->covers.emplace_back(tok[1], tok[2]);
    } else if (kw == "label") {
      if (tok.size() != 3) throw detail::parse_error(lineno, "expected `label <elem> <factor-id>`");
      current->labels.emplace_back(tok[1], tok[2]);
    } else {
      throw detail::parse_error(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (current) blocks.push_back(current->build());
  return blocks;
}

inline std::vector<PosetBlock> read_poset_stream(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_poset_text(buf.str());
}

/// Serializes one block; covers are listed in (lower, upper) index order.
inline std::string to_text(const Poset& p, std::string_view name,
                           const std::vector<std::pair<std::string, std::string>>& labels = {}) {
  std::ostringstream out;
  out << "poset " << name << "\n";
  if (!p.empty()) {
    out << "elem";
    for (const auto& n : p.names()) out << ' ' << n;
    out << "\n";
  }
  for (auto [lo, hi] : p.covers()) out << "cover " << p.name(lo) << ' ' << p.name(hi) << "\n";
  for (const auto& [e, q] : labels) out << "label " << e << ' ' << q << "\n";
  return out.str();
}

}  // namespace posetgame
