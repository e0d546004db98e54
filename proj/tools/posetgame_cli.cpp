#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "posetgame/json_io.hpp"
#include "posetgame/posetgame.hpp"

namespace pg = posetgame;
using nlohmann::json;

namespace {

constexpr const char* kSynopsis = "usage: posetgame [--json] <verb> [args...]  (run with --help for the verb list)";

// Domain failures that are not library errors, e.g. a rejected map.
struct DomainFailure {
  std::string message;
};

std::vector<pg::PosetBlock> read_blocks(const std::string& path) {
  if (path == "-") return pg::read_poset_stream(std::cin);
  std::ifstream in(path);
  if (!in) throw pg::Error(pg::Errc::BadParameter, "cannot open '" + path + "'");
  return pg::read_poset_stream(in);
}

pg::PosetBlock read_first(const std::string& path) {
  auto blocks = read_blocks(path);
  if (blocks.empty()) throw pg::Error(pg::Errc::ParseError, "'" + path + "' holds no poset");
  return std::move(blocks.front());
}

std::vector<std::size_t> parse_numbers(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw pg::Error(pg::Errc::BadParameter, "'" + item + "' is not a non-negative integer");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string format_set(const pg::OptionValueSet& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) {
    if (it != s.begin()) out += ", ";
    out += std::to_string(*it);
  }
  return out + "}";
}

pg::CompressionMap require_map(const std::vector<pg::PosetBlock>& blocks) {
  auto r = pg::verify_labeled_blocks(blocks);
  if (auto* v = std::get_if<pg::ViolationReport>(&r)) {
    throw DomainFailure{"map is not order compressing: " + v->describe(blocks[0].poset)};
  }
  return std::get<pg::CompressionMap>(std::move(r));
}

std::string map_text(const pg::CompressionMap& m, const std::string& source_name, const std::string& target_name) {
  return pg::to_text(m.source, source_name, m.named_labels()) + "\n" + pg::to_text(m.target, target_name);
}

struct Options {
  bool json = false;
  std::string fixtures_dir = pg::default_fixture_dir().string();
  std::string file;
  std::string file2;
  std::string element;
  std::size_t count = 1;
  std::string family;
  std::string params;
  std::size_t max_factors = 4;
  std::size_t max_a = 3;
  std::size_t max_b = 3;
  std::string sample = "exhaustive";
  std::string b_reading = "nimber";
  std::uint64_t seed = 1;
  std::vector<std::string> files;
};

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  void grundy() {
    auto b = read_first(opt_.file);
    auto value = pg::grundy(b.poset);
    if (opt_.json) emit({{"nimber", value}});
    else out_ << value << "\n";
  }

  void analyze() {
    auto b = read_first(opt_.file);
    auto s = pg::Position::full(b.poset);
    auto r = pg::analyze(s);
    if (opt_.json) {
      emit(pg::to_json(r, s.root()));
      return;
    }
    out_ << "nimber: " << r.nimber << "\n";
    out_ << "option values: " << format_set(r.option_values) << "\n";
    out_ << "weakly canonical: " << (r.weakly_canonical ? "yes" : "no") << "\n";
    out_ << "outcome: " << pg::to_string(r.outcome) << "\n";
    out_ << "winning moves:";
    for (const auto& n : pg::sorted_names(s.root(), r.winning_moves)) out_ << ' ' << n;
    out_ << "\n";
    out_ << "positions explored: " << r.stats.positions_explored << "\n";
    out_ << "memo hits: " << r.stats.memo_hits << "\n";
  }

  void options() {
    auto b = read_first(opt_.file);
    auto values = pg::option_value_set(b.poset);
    if (opt_.json) emit({{"optionValues", std::vector<pg::Nimber>(values.begin(), values.end())}});
    else out_ << format_set(values) << "\n";
  }

  void classify() {
    auto b = read_first(opt_.file);
    auto o = pg::classify(pg::Position::full(b.poset));
    if (opt_.json) emit({{"outcome", pg::to_string(o)}});
    else out_ << pg::to_string(o) << "\n";
  }

  void moves() {
    auto b = read_first(opt_.file);
    auto s = pg::Position::full(b.poset);
    auto names = pg::sorted_names(s.root(), pg::winning_moves(s));
    if (opt_.json) {
      emit({{"winningMoves", names}});
      return;
    }
    for (const auto& n : names) out_ << n << "\n";
  }

  void compose(const std::string& verb) {
    auto a = read_first(opt_.file);
    auto b = read_first(opt_.file2);
    pg::Poset result;
    std::string name;
    if (verb == "sum") {
      result = pg::disjoint_sum(a.poset, b.poset);
      name = a.name + "_plus_" + b.name;
    } else if (verb == "ordinal-sum") {
      result = pg::ordinal_sum(a.poset, b.poset);
      name = a.name + "_on_" + b.name;
    } else {
      result = pg::lex_product(a.poset, b.poset);
      name = a.name + "_lex_" + b.name;
    }
    emit_poset(result, name);
  }

  void verify_map() {
    auto blocks = read_blocks(opt_.file);
    auto r = pg::verify_labeled_blocks(blocks);
    const bool ok = std::holds_alternative<pg::CompressionMap>(r);
    if (opt_.json) {
      emit(pg::to_json(r, blocks[0].poset));
    } else if (ok) {
      out_ << "verified\n";
    } else {
      out_ << "rejected: " << std::get<pg::ViolationReport>(r).describe(blocks[0].poset) << "\n";
    }
    if (!ok) exit_code_ = 1;
  }

  void factor() {
    auto blocks = read_blocks(opt_.file);
    pg::Factorization fz(require_map(blocks));
    const auto q = fz.target().at(opt_.element);
    emit_poset(pg::factor(fz, q), blocks[0].name + "_" + opt_.element);
  }

  void replace_factor() {
    auto blocks = read_blocks(opt_.file);
    pg::Factorization fz(require_map(blocks));
    auto y = read_first(opt_.file2);
    auto r = pg::replace_factor(fz, fz.target().at(opt_.element), y.poset);
    const auto text = map_text(r.map, blocks[0].name + "_replaced", blocks[1].name);
    if (opt_.json) emit({{"poset", text}, {"size", r.poset.size()}, {"nimber", pg::grundy(r.poset)}});
    else out_ << text;
  }

  void blowup() {
    auto b = read_first(opt_.file);
    auto q = pg::blow_up(b.poset, b.poset.at(opt_.element), opt_.count);
    emit_poset(q, b.name + "_blowup");
  }

  void find_compressions() {
    auto b = read_first(opt_.file);
    auto maps = pg::find_compressions(b.poset, opt_.max_factors);
    if (opt_.json) {
      json arr = json::array();
      for (const auto& m : maps) {
        json labels = json::object();
        for (const auto& [e, q] : m.named_labels()) labels[e] = q;
        arr.push_back({{"target", pg::to_text(m.target, "target")}, {"labels", labels}});
      }
      emit({{"count", maps.size()}, {"compressions", arr}});
      return;
    }
    out_ << "# " << maps.size() << " order compressing map(s)\n";
    for (std::size_t i = 0; i < maps.size(); ++i) {
      out_ << "\n# map " << i << ": " << maps[i].target.size() << " factor(s)\n";
      out_ << map_text(maps[i], b.name, "target" + std::to_string(i));
    }
  }

  void conjecture() {
    const auto reading = parse_reading();
    if (!opt_.files.empty()) {
      if (opt_.files.size() != 2) throw UsageError{"conjecture takes either two poset files or none"};
      auto a = read_first(opt_.files[0]);
      auto b = read_first(opt_.files[1]);
      auto r = pg::conjecture_check(a.poset, b.poset, reading);
      if (opt_.json) {
        json vs = json::array();
        for (const auto& v : r.violations) {
          vs.push_back({{"a", a.poset.name(v.a)}, {"b", b.poset.name(v.b)}, {"lhs", v.lhs}, {"rhs", v.rhs}});
        }
        emit({{"exponent", r.instance.exponent},
              {"checkedPairs", r.checked_pairs},
              {"violations", vs},
              {"corollaryHolds", r.corollary_holds}});
      } else {
        out_ << "exponent: " << r.instance.exponent << "\n";
        out_ << "checked pairs: " << r.checked_pairs << "\n";
        out_ << "violations: " << r.violations.size() << "\n";
        for (const auto& v : r.violations) {
          out_ << "  (" << a.poset.name(v.a) << ", " << b.poset.name(v.b) << ") lhs " << v.lhs << " rhs " << v.rhs
               << "\n";
        }
        out_ << "product nimber = G(A)G(B): " << (r.corollary_holds ? "yes" : "no") << "\n";
      }
      return;
    }
    pg::SweepParams params;
    params.max_a = opt_.max_a;
    params.max_b = opt_.max_b;
    params.seed = opt_.seed;
    params.reading = reading;
    if (opt_.sample != "exhaustive") {
      auto v = parse_numbers(opt_.sample);
      if (v.size() != 1) throw UsageError{"--sample takes a count or 'exhaustive'"};
      params.sample = v[0];
    }
    auto report = pg::conjecture_sweep(params);
    if (opt_.json) {
      emit(pg::to_json(report));
      return;
    }
    out_ << "admissible: " << report.admissible << "\n";
    out_ << "skipped: " << report.skipped << "\n";
    out_ << "confirmed: " << report.confirmed << "\n";
    out_ << "violated: " << report.violated << "\n";
    out_ << "checked pairs: " << report.checked_pairs << "\n";
    for (const auto& c : report.counterexamples) {
      out_ << "\n# counterexample\n" << pg::to_text(c.a, "A") << pg::to_text(c.b, "B");
      for (const auto& v : c.violations) {
        out_ << "# (" << c.a.name(v.a) << ", " << c.b.name(v.b) << ") lhs " << v.lhs << " rhs " << v.rhs << "\n";
      }
    }
  }

  void generate() {
    auto params = parse_numbers(opt_.params);
    auto p = pg::generate(opt_.family, params);
    std::string name = opt_.family;
    for (auto v : params) name += "_" + std::to_string(v);
    emit_poset(p, name);
  }

  void fixtures() {
    if (!opt_.element.empty()) {
      auto fx = pg::load_fixture(opt_.element, opt_.fixtures_dir);
      std::ifstream in(fx.path);
      if (opt_.json) {
        std::ostringstream buf;
        buf << in.rdbuf();
        emit({{"name", fx.name}, {"text", buf.str()}});
      } else {
        out_ << in.rdbuf();
      }
      return;
    }
    json arr = json::array();
    for (const auto& fx : pg::load_fixtures(opt_.fixtures_dir)) {
      std::vector<std::string> expectations;
      for (const auto& e : fx.expectations) {
        std::string line;
        for (const auto& t : e) line += (line.empty() ? "" : " ") + t;
        expectations.push_back(line);
      }
      if (opt_.json) {
        arr.push_back({{"name", fx.name}, {"size", fx.poset().size()}, {"expect", expectations}});
        continue;
      }
      out_ << fx.name << " (" << fx.poset().size() << " elements)";
      for (const auto& e : expectations) out_ << "; " << e;
      out_ << "\n";
    }
    if (opt_.json) emit(arr);
  }

  int exit_code() const { return exit_code_; }

  struct UsageError {
    std::string message;
  };

 private:
  pg::BReading parse_reading() const {
    if (opt_.b_reading == "nimber") return pg::BReading::Nimber;
    if (opt_.b_reading == "chain") return pg::BReading::Chain;
    throw UsageError{"--b-reading must be 'nimber' or 'chain'"};
  }

  void emit(const json& j) { out_ << j.dump(2) << "\n"; }

  void emit_poset(const pg::Poset& p, const std::string& name) {
    const auto text = pg::to_text(p, name);
    if (opt_.json) emit({{"poset", text}, {"size", p.size()}});
    else out_ << text;
  }

  const Options& opt_;
  std::ostream& out_;
  int exit_code_ = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poset game analysis: nimbers, order compressing maps and lexicographic products"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.json, "Emit a single JSON document");
  app.add_option("--fixtures-dir", opt.fixtures_dir, "Directory holding the figure fixtures");

  std::string verb;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&verb, name] { verb = name; });
    return sub;
  };
  auto file_arg = [&](CLI::App* sub, std::string& target, const std::string& label) {
    sub->add_option(label, target, "Poset file, or - for standard input")->required();
  };

  for (const auto* v : {"grundy", "analyze", "options", "classify", "moves"}) {
    auto* sub = add(v, std::string("Run '") + v + "' on the first poset of a file");
    file_arg(sub, opt.file, "file");
  }
  for (const auto* v : {"sum", "ordinal-sum", "lex-product"}) {
    auto* sub = add(v, std::string("Compose two posets (") + v + ")");
    file_arg(sub, opt.file, "a");
    file_arg(sub, opt.file2, "b");
  }
  {
    auto* sub = add("verify-map", "Check a labeled source block against its target block");
    file_arg(sub, opt.file, "file");
  }
  {
    auto* sub = add("factor", "Print the factor of a target element");
    file_arg(sub, opt.file, "file");
    sub->add_option("q", opt.element, "Target element")->required();
  }
  {
    auto* sub = add("replace-factor", "Swap the factor of a maximal target element for another poset");
    file_arg(sub, opt.file, "file");
    sub->add_option("alpha", opt.element, "Maximal target element")->required();
    file_arg(sub, opt.file2, "replacement");
  }
  {
    auto* sub = add("blowup", "Replace an element with 2n+1 incomparable copies");
    file_arg(sub, opt.file, "file");
    sub->add_option("element", opt.element, "Element to copy")->required();
    sub->add_option("n", opt.count, "Copies are 2n+1")->required();
  }
  {
    auto* sub = add("find-compressions", "Enumerate order compressing maps of a small poset");
    file_arg(sub, opt.file, "file");
    sub->add_option("--max-factors", opt.max_factors, "Largest number of factors");
  }
  {
    auto* sub = add("conjecture", "Check the lexicographic product identity for two posets, or sweep");
    sub->add_option("files", opt.files, "Posets A and B");
    sub->add_option("--max-a", opt.max_a, "Largest |A| in a sweep");
    sub->add_option("--max-b", opt.max_b, "Largest |B| in a sweep");
    sub->add_option("--sample", opt.sample, "Number of random pairs, or 'exhaustive'");
    sub->add_option("--b-reading", opt.b_reading, "Admissibility filter: nimber or chain");
    sub->add_option("--seed", opt.seed, "Seed for sampled sweeps");
  }
  {
    auto* sub = add("generate", "Print a named family: chain, antichain, nim, fence, grid, chomp");
    sub->add_option("family", opt.family)->required();
    sub->add_option("params", opt.params, "Comma separated parameters, e.g. 5,3,5")->required();
  }
  {
    auto* sub = add("fixtures", "List the figure fixtures, or print one");
    sub->add_option("name", opt.element, "Fixture to print");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << kSynopsis << "\n";
    return 2;
  }

  Runner run(opt, std::cout);
  try {
    if (verb == "grundy") run.grundy();
    else if (verb == "analyze") run.analyze();
    else if (verb == "options") run.options();
    else if (verb == "classify") run.classify();
    else if (verb == "moves") run.moves();
    else if (verb == "sum" || verb == "ordinal-sum" || verb == "lex-product") run.compose(verb);
    else if (verb == "verify-map") run.verify_map();
    else if (verb == "factor") run.factor();
    else if (verb == "replace-factor") run.replace_factor();
    else if (verb == "blowup") run.blowup();
    else if (verb == "find-compressions") run.find_compressions();
    else if (verb == "conjecture") run.conjecture();
    else if (verb == "generate") run.generate();
    else if (verb == "fixtures") run.fixtures();
  } catch (const Runner::UsageError& e) {
    std::cerr << "error: " << e.message << "\n" << kSynopsis << "\n";
    return 2;
  } catch (const DomainFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  } catch (const pg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return run.exit_code();
}
