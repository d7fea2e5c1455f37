#ifndef CLAIMSCOPE_CORPUS_HPP
#define CLAIMSCOPE_CORPUS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimscope/csv.hpp"
#include "claimscope/error.hpp"
#include "claimscope/frequency_table.hpp"
#include "claimscope/normalizer.hpp"

namespace claimscope {

namespace fs = std::filesystem;

// 64-bit FNV-1a; fixture manifests record it for each data file.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFixtureCorrupt, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ---------------------------------------------------------------------------
// Claim series

struct ClaimSeries {
  std::string series_id;
  std::string description;
  std::vector<RawClaim> claims;
};

namespace detail {

inline std::string series_of(const std::string& ref) {
  auto dot = ref.find('.');
  return dot == std::string::npos ? std::string() : ref.substr(0, dot);
}

inline long ordinal_of(const std::string& ref) {
  auto dot = ref.find('.');
  if (dot == std::string::npos) return -1;
  try {
    return std::stol(ref.substr(dot + 1));
  } catch (const std::exception&) {
    return -1;
  }
}

inline std::vector<csv::Row> read_table(const std::string& content,
                                        const std::vector<std::string>& header,
                                        const std::string& source) {
  std::istringstream in(content);
  auto rows = csv::read(in);
  if (rows.empty()) throw Error(ErrorCode::kFixtureCorrupt, source + " is empty");
  if (rows.front() != header) {
    throw Error(ErrorCode::kFixtureCorrupt, source + " has an unexpected header");
  }
  rows.erase(rows.begin());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != header.size()) {
      throw Error(ErrorCode::kFixtureCorrupt,
                  source + " row " + std::to_string(i + 2) + " has " +
                      std::to_string(rows[i].size()) + " columns, expected " +
                      std::to_string(header.size()));
    }
  }
  if (rows.empty()) throw Error(ErrorCode::kFixtureCorrupt, source + " has no data rows");
  return rows;
}

}  // namespace detail

// Reads a `ref,text` CSV.
inline std::vector<RawClaim> load_claims_csv(const fs::path& path) {
  auto rows = detail::read_table(read_file(path), {"ref", "text"}, path.string());
  std::vector<RawClaim> out;
  std::set<std::string> seen;
  for (auto& r : rows) {
    if (!seen.insert(r[0]).second) {
      throw Error(ErrorCode::kFixtureCorrupt, "duplicate ref " + r[0] + " in " + path.string());
    }
    out.push_back(RawClaim{std::move(r[1]), std::move(r[0])});
  }
  return out;
}

// Loads claim series. `path` is either a `ref,text` CSV (refs like "A1.3")
// or a directory holding manifest.json, in which case the CSV named there is
// checked against the recorded checksum and per-series counts.
inline std::vector<ClaimSeries> load_series(const fs::path& path) {
  fs::path csv_path = path;
  std::optional<nlohmann::json> manifest;
  if (fs::is_directory(path)) {
    try {
      manifest = nlohmann::json::parse(read_file(path / "manifest.json"));
      csv_path = path / manifest->at("file").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFixtureCorrupt, "bad manifest: " + std::string(e.what()));
    }
  }
  const std::string content = read_file(csv_path);
  if (manifest) {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content)));
    if (manifest->value("fnv1a64", std::string()) != hex) {
      throw Error(ErrorCode::kFixtureCorrupt, csv_path.string() + " checksum mismatch");
    }
  }
  auto claims = load_claims_csv(csv_path);

  std::vector<ClaimSeries> out;
  std::map<std::string, std::size_t> index;
  for (auto& c : claims) {
    const std::string sid = detail::series_of(*c.id);
    if (sid.empty()) {
      throw Error(ErrorCode::kFixtureCorrupt, "ref " + *c.id + " has no series prefix");
    }
    auto [it, inserted] = index.emplace(sid, out.size());
    if (inserted) out.push_back(ClaimSeries{sid, "", {}});
    auto& series = out[it->second];
    if (!series.claims.empty() &&
        detail::ordinal_of(*c.id) <= detail::ordinal_of(*series.claims.back().id)) {
      throw Error(ErrorCode::kFixtureCorrupt, "ref " + *c.id + " is out of order");
    }
    series.claims.push_back(std::move(c));
  }

  if (manifest) {
    const auto& listed = (*manifest)["series"];
    if (listed.size() != out.size()) {
      throw Error(ErrorCode::kFixtureCorrupt, "manifest lists " +
                                                  std::to_string(listed.size()) +
                                                  " series, file has " +
                                                  std::to_string(out.size()));
    }
    for (const auto& entry : listed) {
      const auto id = entry.at("id").get<std::string>();
      auto it = index.find(id);
      if (it == index.end()) {
        throw Error(ErrorCode::kFixtureCorrupt, "series " + id + " missing from file");
      }
      auto& series = out[it->second];
      if (series.claims.size() != entry.at("transcribed").get<std::size_t>()) {
        throw Error(ErrorCode::kFixtureCorrupt, "series " + id + " claim count mismatch");
      }
      series.description = entry.value("description", "");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Golden scope values

// Model column order in golden files and correlation matrices.
inline constexpr std::array<std::string_view, 5> kGoldenModels = {
    "gpt2", "word-freq", "word-count", "char-freq", "char-count"};

struct GoldenRow {
  std::string ref;
  long word_count = 0;
  std::array<double, 5> scope{};  // ordered as kGoldenModels

  bool operator==(const GoldenRow&) const = default;
};

inline const std::vector<std::string>& golden_header() {
  static const std::vector<std::string> header = {
      "ref",       "word_count",          "gpt2",           "word_frequency",
      "word_count_scope", "character_frequency", "character_count"};
  return header;
}

inline std::vector<GoldenRow> parse_golden(const std::string& content,
                                           const std::string& source = "golden") {
  auto rows = detail::read_table(content, golden_header(), source);
  std::vector<GoldenRow> out;
  for (const auto& r : rows) {
    GoldenRow g;
    g.ref = r[0];
    const std::string where = source + " row " + g.ref;
    double wc = detail::parse_double(r[1], where);
    if (wc < 1 || wc != static_cast<double>(static_cast<long>(wc))) {
      throw Error(ErrorCode::kFixtureCorrupt, "bad word count in " + where);
    }
    g.word_count = static_cast<long>(wc);
    for (std::size_t k = 0; k < 5; ++k) {
      g.scope[k] = detail::parse_double(r[k + 2], where);
      if (!(g.scope[k] > 0.0)) {
        throw Error(ErrorCode::kFixtureCorrupt, "non-positive scope in " + where);
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

inline std::vector<GoldenRow> load_golden(const fs::path& path) {
  return parse_golden(read_file(path), path.string());
}

// Scope values are written with six decimals, as printed in the source table.
inline void write_golden(std::ostream& out, const std::vector<GoldenRow>& rows) {
  csv::write_row(out, golden_header());
  char buf[32];
  for (const auto& g : rows) {
    csv::Row row = {g.ref, std::to_string(g.word_count)};
    for (double s : g.scope) {
      std::snprintf(buf, sizeof buf, "%.6f", s);
      row.emplace_back(buf);
    }
    csv::write_row(out, row);
  }
}

// ---------------------------------------------------------------------------
// Frequency tables from text corpora

inline FrequencyTable build_frequency_table(const std::vector<fs::path>& corpus_paths,
                                            TokenKind kind) {
  if (corpus_paths.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "no corpus files given");
  }
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  for (const auto& path : corpus_paths) {
    std::string text = read_file(path);
    for (char& c : text) c = utf8::ascii_lower(c);
    if (kind == TokenKind::kWord) {
      for (auto& w : tokenize_words(text)) {
        ++counts[w];
        ++total;
      }
      continue;
    }
    // Whitespace runs count as one space; leading/trailing runs are dropped.
    std::string collapsed;
    bool pending_space = false;
    for (char c : text) {
      if (utf8::is_ascii_space(c)) {
        pending_space = !collapsed.empty();
        continue;
      }
      if (pending_space) collapsed.push_back(' ');
      pending_space = false;
      collapsed.push_back(c);
    }
    for (auto& cp : utf8::code_points(collapsed)) {
      ++counts[cp];
      ++total;
    }
  }
  if (total == 0) throw Error(ErrorCode::kEmptyCorpus, "corpus contains no tokens");
  std::unordered_map<std::string, double> freqs;
  for (const auto& [token, n] : counts) {
    freqs.emplace(token, static_cast<double>(n) / static_cast<double>(total));
  }
  return FrequencyTable(kind, std::move(freqs));
}

// ---------------------------------------------------------------------------
// Claim variation templates

// Ordered slots of interchangeable fragments; one pick per slot forms a claim.
struct VariationTemplate {
  std::string name;
  std::vector<std::vector<std::string>> slots;

  void validate() const {
    if (slots.empty()) throw Error(ErrorCode::kInvalidArgument, "template has no slots");
    for (const auto& s : slots) {
      if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "template slot is empty");
    }
  }

  std::uint64_t expansion_count() const {
    validate();
    std::uint64_t n = 1;
    for (const auto& s : slots) {
      if (n > std::numeric_limits<std::uint64_t>::max() / s.size()) {
        throw Error(ErrorCode::kInvalidArgument, "template expansion overflows");
      }
      n *= s.size();
    }
    return n;
  }
};

inline VariationTemplate parse_template(const std::string& json_text, std::string name = "") {
  VariationTemplate t;
  t.name = std::move(name);
  try {
    t.slots = nlohmann::json::parse(json_text).get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFixtureCorrupt, "bad template: " + std::string(e.what()));
  }
  t.validate();
  return t;
}

inline VariationTemplate load_template(const fs::path& path) {
  return parse_template(read_file(path), path.stem().string());
}

// Fragments join with one space; a fragment opening with ',', ';' or ':'
// attaches to the previous one; empty fragments vanish.
inline std::string join_fragments(const std::vector<std::string_view>& fragments) {
  std::string out;
  for (auto f : fragments) {
    f = detail::trim(f);
    if (f.empty()) continue;
    const bool attach = f[0] == ',' || f[0] == ';' || f[0] == ':';
    if (!out.empty() && !attach) out.push_back(' ');
    out.append(f);
  }
  return out;
}

// The variation at mixed-radix position `index`; the first slot is the most
// significant digit, so expand_template() lists variations lexicographically.
inline RawClaim variation_at(const VariationTemplate& t, std::uint64_t index) {
  std::vector<std::string_view> picks(t.slots.size());
  for (std::size_t s = t.slots.size(); s-- > 0;) {
    picks[s] = t.slots[s][index % t.slots[s].size()];
    index /= t.slots[s].size();
  }
  return RawClaim{join_fragments(picks), std::nullopt};
}

inline std::vector<RawClaim> expand_template(const VariationTemplate& t) {
  const std::uint64_t n = t.expansion_count();
  std::vector<RawClaim> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(variation_at(t, i));
    out.back().id = t.name + "#" + std::to_string(i);
  }
  return out;
}

// `n` distinct variations chosen with a seeded mt19937_64 (Floyd's
// algorithm, rejection sampling for uniformity), listed in expansion order.
inline std::vector<RawClaim> sample_template(const VariationTemplate& t, std::uint64_t n,
                                             std::uint64_t seed) {
  const std::uint64_t total = t.expansion_count();
  if (n > total) {
    throw Error(ErrorCode::kSampleTooLarge, "requested " + std::to_string(n) +
                                                " of " + std::to_string(total) +
                                                " variations");
  }
  std::mt19937_64 rng(seed);
  auto uniform_below = [&rng](std::uint64_t bound) {
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = rng();
    } while (x >= limit);
    return x % bound;
  };
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = total - n; j < total; ++j) {
    std::uint64_t r = uniform_below(j + 1);
    if (!chosen.insert(r).second) chosen.insert(j);
  }
  std::vector<RawClaim> out;
  for (std::uint64_t i : chosen) {
    out.push_back(variation_at(t, i));
    out.back().id = t.name + "#" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Term hierarchies

struct HierarchyNode {
  std::string term;
  std::vector<HierarchyNode> children;
};

enum class RelationSet { kEdges, kClosure };

struct Relation {
  std::string parent;
  std::string child;
};

// A root term with recursively narrower children.
struct HierarchyTree {
  HierarchyNode root;

  std::size_t size() const { return count(root); }
  std::size_t depth() const { return depth_of(root); }

  // Parent/child edges, or every ancestor/descendant pair, in pre-order.
  std::vector<Relation> relations(RelationSet set) const {
    std::vector<Relation> out;
    std::vector<const HierarchyNode*> ancestors;
    collect(root, ancestors, set, out);
    return out;
  }

 private:
  static std::size_t count(const HierarchyNode& n) {
    std::size_t c = 1;
    for (const auto& ch : n.children) c += count(ch);
    return c;
  }
  static std::size_t depth_of(const HierarchyNode& n) {
    std::size_t d = 0;
    for (const auto& ch : n.children) d = std::max(d, 1 + depth_of(ch));
    return d;
  }
  static void collect(const HierarchyNode& n, std::vector<const HierarchyNode*>& ancestors,
                      RelationSet set, std::vector<Relation>& out) {
    for (const auto& ch : n.children) {
      if (set == RelationSet::kEdges) {
        out.push_back({n.term, ch.term});
      } else {
        for (const auto* a : ancestors) out.push_back({a->term, ch.term});
        out.push_back({n.term, ch.term});
      }
    }
    ancestors.push_back(&n);
    for (const auto& ch : n.children) collect(ch, ancestors, set, out);
    ancestors.pop_back();
  }
};

// Throws unless every node differs from all of its ancestors.
inline void validate_hierarchy(const HierarchyTree& tree) {
  std::vector<std::string> path;
  auto walk = [&path](auto&& self, const HierarchyNode& n) -> void {
    if (n.term.empty()) throw Error(ErrorCode::kFixtureCorrupt, "empty hierarchy term");
    if (std::find(path.begin(), path.end(), n.term) != path.end()) {
      throw Error(ErrorCode::kFixtureCorrupt, "term '" + n.term + "' repeats an ancestor");
    }
    path.push_back(n.term);
    for (const auto& ch : n.children) self(self, ch);
    path.pop_back();
  };
  walk(walk, tree.root);
}

// Indented text: one term per line, depth given by leading whitespace (the
// first indented line fixes the unit; a tab counts as one unit). '#' starts a
// comment line.
inline HierarchyTree parse_hierarchy(std::istream& in, const std::string& source = "hierarchy") {
  struct Entry {
    std::size_t depth;
    std::string term;
  };
  std::vector<Entry> entries;
  std::size_t unit = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t spaces = 0;
    std::size_t tabs = 0;
    std::size_t i = 0;
    for (; i < line.size() && (line[i] == ' ' || line[i] == '\t'); ++i) {
      (line[i] == '\t' ? tabs : spaces)++;
    }
    std::string term(detail::trim(std::string_view(line).substr(i)));
    if (term.empty() || term[0] == '#') continue;
    if (spaces > 0 && unit == 0) unit = spaces;
    if (unit > 0 && spaces % unit != 0) {
      throw Error(ErrorCode::kFixtureCorrupt,
                  source + ":" + std::to_string(line_no) + " has uneven indentation");
    }
    entries.push_back({tabs + (unit ? spaces / unit : 0), term});
  }
  if (entries.empty()) throw Error(ErrorCode::kEmptyTree, source + " has no terms");
  if (entries[0].depth != 0) {
    throw Error(ErrorCode::kFixtureCorrupt, source + ": first term must not be indented");
  }

  HierarchyTree tree;
  tree.root.term = entries[0].term;
  std::vector<HierarchyNode*> stack = {&tree.root};
  for (std::size_t k = 1; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.depth == 0) {
      throw Error(ErrorCode::kFixtureCorrupt, source + " has more than one root");
    }
    if (e.depth > stack.size()) {
      throw Error(ErrorCode::kFixtureCorrupt, source + ": '" + e.term + "' skips a level");
    }
    stack.resize(e.depth);
    stack.back()->children.push_back(HierarchyNode{e.term, {}});
    stack.push_back(&stack.back()->children.back());
  }
  validate_hierarchy(tree);
  return tree;
}

inline HierarchyTree load_hierarchy(const fs::path& path) {
  std::istringstream in(read_file(path));
  return parse_hierarchy(in, path.string());
}

}  // namespace claimscope

#endif  // CLAIMSCOPE_CORPUS_HPP
