#ifndef CLAIMSCOPE_FREQUENCY_TABLE_HPP
#define CLAIMSCOPE_FREQUENCY_TABLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "claimscope/error.hpp"

namespace claimscope {

enum class TokenKind { kWord, kCharacter };

inline std::string_view to_string(TokenKind kind) {
  return kind == TokenKind::kWord ? "word" : "character";
}

// Default character inventory used for counting models. The published list
// names 50 entries but repeats "%" and "x", so it holds 48 distinct symbols;
// the vocabulary size stays 50.
inline constexpr std::string_view kDefaultCharset =
    " ,.:;-+_%()0123456789/abcdefghijklmnopqrstuvwxyz";

// Smallest frequency of the reference word list; missing words score here.
inline constexpr double kDefaultWordCutoff = 7.59559e-11;

// Token -> relative frequency, plus the probability used for tokens the
// table has never seen.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  FrequencyTable(TokenKind kind, std::unordered_map<std::string, double> entries,
                 std::optional<double> cutoff = std::nullopt)
      : kind_(kind), entries_(std::move(entries)) {
    if (cutoff) {
      cutoff_ = *cutoff;
    } else {
      cutoff_ = 1.0;
      for (const auto& [token, f] : entries_) cutoff_ = std::min(cutoff_, f);
    }
    validate();
  }

  TokenKind kind() const { return kind_; }
  double cutoff() const { return cutoff_; }
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, double>& entries() const {
    return entries_;
  }

  bool contains(const std::string& token) const {
    return entries_.count(token) > 0;
  }

  double frequency(const std::string& token) const {
    auto it = entries_.find(token);
    return it == entries_.end() ? cutoff_ : it->second;
  }

  double log_frequency(const std::string& token) const {
    return std::log(frequency(token));
  }

  double total() const {
    double sum = 0.0;
    for (const auto& [token, f] : entries_) sum += f;
    return sum;
  }

  // Characters of kDefaultCharset with no entry (they score at the cutoff).
  std::string missing_charset() const {
    std::string missing;
    for (char c : kDefaultCharset) {
      if (!contains(std::string(1, c))) missing.push_back(c);
    }
    return missing;
  }

 private:
  void validate() const {
    if (entries_.empty()) {
      throw Error(ErrorCode::kEmptyCorpus, "frequency table has no entries");
    }
    for (const auto& [token, f] : entries_) {
      if (!(f > 0.0 && f < 1.0)) {
        throw Error(ErrorCode::kEmptyCorpus,
                    "frequency of '" + token + "' is outside (0,1)");
      }
    }
    if (!(cutoff_ > 0.0 && cutoff_ < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "cutoff outside (0,1)");
    }
    if (kind_ == TokenKind::kCharacter) {
      double sum = total();
      if (sum < 0.99 || sum > 1.01) {
        throw Error(ErrorCode::kFixtureCorrupt,
                    "character frequencies sum to " + std::to_string(sum));
      }
    }
  }

  TokenKind kind_ = TokenKind::kWord;
  std::unordered_map<std::string, double> entries_;
  double cutoff_ = 1.0;
};

namespace detail {

inline double parse_double(std::string_view s, const std::string& where) {
  std::string copy(s);
  char* end = nullptr;
  double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw Error(ErrorCode::kFixtureCorrupt,
                "bad number '" + copy + "' in " + where);
  }
  return v;
}

}  // namespace detail

// Text format:
//   # comment
//   kind: word|character
//   cutoff: <float>
//   <token>\t<frequency>
// A line starting with '#' is a comment unless the next byte is a TAB, so
// "#" itself can be a character token. Without a cutoff header, word tables
// use kDefaultWordCutoff and character tables their smallest frequency.
inline FrequencyTable parse_frequency_table(
    std::istream& in, const std::string& source = "table",
    double default_word_cutoff = kDefaultWordCutoff) {
  std::optional<TokenKind> kind;
  std::optional<double> cutoff;
  std::unordered_map<std::string, double> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = source + ":" + std::to_string(line_no);
    if (line.empty()) continue;
    if (line[0] == '#' && (line.size() < 2 || line[1] != '\t')) continue;
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) {
      if (line.rfind("kind:", 0) == 0) {
        std::string v(line.substr(5));
        v.erase(0, v.find_first_not_of(' '));
        if (v == "word") kind = TokenKind::kWord;
        else if (v == "character") kind = TokenKind::kCharacter;
        else throw Error(ErrorCode::kFixtureCorrupt, "unknown kind at " + where);
      } else if (line.rfind("cutoff:", 0) == 0) {
        std::string v(line.substr(7));
        v.erase(0, v.find_first_not_of(' '));
        cutoff = detail::parse_double(v, where);
      } else {
        throw Error(ErrorCode::kFixtureCorrupt, "unrecognized line at " + where);
      }
      continue;
    }
    std::string token = line.substr(0, tab);
    double f = detail::parse_double(std::string_view(line).substr(tab + 1), where);
    if (token.empty()) {
      throw Error(ErrorCode::kFixtureCorrupt, "empty token at " + where);
    }
    if (!entries.emplace(token, f).second) {
      throw Error(ErrorCode::kFixtureCorrupt, "duplicate token at " + where);
    }
  }
  if (!kind) {
    throw Error(ErrorCode::kFixtureCorrupt, source + " lacks a 'kind:' header");
  }
  if (!cutoff && *kind == TokenKind::kWord) cutoff = default_word_cutoff;
  return FrequencyTable(*kind, std::move(entries), cutoff);
}

inline FrequencyTable load_frequency_table(
    const std::string& path, double default_word_cutoff = kDefaultWordCutoff) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFixtureCorrupt, "cannot open " + path);
  return parse_frequency_table(in, path, default_word_cutoff);
}

// Entries are written sorted by descending frequency, then token.
inline void write_frequency_table(std::ostream& out, const FrequencyTable& table,
                                  std::string_view comment = {}) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "kind: " << to_string(table.kind()) << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", table.cutoff());
  out << "cutoff: " << buf << "\n";
  std::vector<std::pair<std::string, double>> sorted(table.entries().begin(),
                                                     table.entries().end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  for (const auto& [token, f] : sorted) {
    std::snprintf(buf, sizeof buf, "%.17g", f);
    out << token << '\t' << buf << "\n";
  }
}

}  // namespace claimscope

#endif  // CLAIMSCOPE_FREQUENCY_TABLE_HPP
