#ifndef CLAIMSCOPE_BRANCHING_HPP
#define CLAIMSCOPE_BRANCHING_HPP

#include <array>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "claimscope/error.hpp"
#include "claimscope/normalizer.hpp"

namespace claimscope {

// Branch texts of one claim with their signed weights.
struct BranchSpec {
  std::vector<std::string> branch_texts;
  std::vector<int> weights;
  bool heuristic = false;

  std::size_t size() const { return branch_texts.size(); }
};

namespace detail {

inline bool is_blank(std::string_view line) {
  for (char c : line) {
    if (!utf8::is_ascii_space(c)) return false;
  }
  return true;
}

inline void close_block(BranchSpec& current, std::vector<BranchSpec>& out,
                        int line_no) {
  if (current.size() == 0) return;
  if (current.weights.front() <= 0) {
    throw Error(ErrorCode::kMalformedMarkup,
                "block ending at line " + std::to_string(line_no) +
                    " starts with a negative branch");
  }
  out.push_back(std::move(current));
  current = BranchSpec{};
}

}  // namespace detail

// Branch file format: "+ text" / "- text" lines, blank lines between claims,
// '#' comments.
inline std::vector<BranchSpec> parse_branch_file(std::istream& in) {
  std::vector<BranchSpec> out;
  BranchSpec current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::is_blank(line)) {
      detail::close_block(current, out, line_no);
      continue;
    }
    if (line[0] == '#') continue;
    if (line.size() < 3 || (line[0] != '+' && line[0] != '-') || line[1] != ' ' ||
        detail::is_blank(std::string_view(line).substr(2))) {
      throw Error(ErrorCode::kMalformedMarkup,
                  "line " + std::to_string(line_no) + ": expected '+ text' or '- text'");
    }
    current.branch_texts.push_back(line.substr(2));
    current.weights.push_back(line[0] == '+' ? 1 : -1);
  }
  detail::close_block(current, out, line_no + 1);
  return out;
}

inline std::vector<BranchSpec> parse_branch_file(std::string_view markup) {
  std::istringstream in{std::string(markup)};
  return parse_branch_file(in);
}

// Markup for a single claim.
inline BranchSpec parse_explicit(std::string_view markup) {
  auto blocks = parse_branch_file(markup);
  if (blocks.size() != 1) {
    throw Error(ErrorCode::kMalformedMarkup,
                "expected one claim, found " + std::to_string(blocks.size()));
  }
  return std::move(blocks.front());
}

namespace detail {

inline bool ends_with_clause_mark(std::string_view piece) {
  char c = piece.back();
  return c == ',' || c == ';' || c == ':';
}

inline bool has_clause_mark(std::string_view piece) {
  return piece.find_first_of(",;:()") != std::string_view::npos;
}

inline std::string join_pieces(const std::vector<std::string>& pieces,
                               std::size_t begin, std::size_t end,
                               const std::vector<std::string>& tail) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) out += " " + pieces[i];
  for (const auto& t : tail) out += " " + t;
  return out;
}

}  // namespace detail

// Splits "<prefix> X or Y" into two positive branches and "<prefix> X except
// Y" into X (+1) and Y (-1). Only the last keyword is considered; Y runs to
// the end of the claim and X takes as many words as Y, never crossing a
// comma. Anything else comes back as one branch holding the whole claim.
inline BranchSpec split_heuristic(const NormalizedClaim& nc) {
  static constexpr std::array<std::string_view, 3> kRangeWords = {"less", "more", "equal"};

  BranchSpec whole{{nc.text}, {1}, true};
  std::vector<std::string> pieces;
  {
    std::istringstream in(nc.text);
    for (std::string p; in >> p;) pieces.push_back(p);
  }

  std::size_t keyword = pieces.size();
  for (std::size_t i = pieces.size(); i-- > 0;) {
    if (pieces[i] == "except") {
      keyword = i;
      break;
    }
    if (pieces[i] == "or") {
      bool range = false;
      if (i + 1 < pieces.size()) {
        for (auto w : kRangeWords) range = range || pieces[i + 1].rfind(w, 0) == 0;
      }
      if (range) continue;
      keyword = i;
      break;
    }
  }
  if (keyword == pieces.size() || keyword == 0 || keyword + 1 == pieces.size()) {
    return whole;
  }

  std::vector<std::string> second(pieces.begin() + keyword + 1, pieces.end());
  for (const auto& p : second) {
    if (detail::has_clause_mark(p)) return whole;
  }

  std::size_t first_begin = keyword;
  while (first_begin > 0 && keyword - first_begin < second.size() &&
         !detail::ends_with_clause_mark(pieces[first_begin - 1])) {
    --first_begin;
  }
  if (first_begin == keyword) return whole;
  std::vector<std::string> first(pieces.begin() + first_begin, pieces.begin() + keyword);

  const bool disclaimer = pieces[keyword] == "except";
  BranchSpec spec;
  spec.heuristic = true;
  spec.branch_texts.push_back(detail::join_pieces(pieces, 0, first_begin, first));
  spec.branch_texts.push_back(detail::join_pieces(pieces, 0, first_begin, second));
  spec.weights = {1, disclaimer ? -1 : 1};
  return spec;
}

}  // namespace claimscope

#endif  // CLAIMSCOPE_BRANCHING_HPP
