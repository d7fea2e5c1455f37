#ifndef CLAIMSCOPE_NORMALIZER_HPP
#define CLAIMSCOPE_NORMALIZER_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "claimscope/error.hpp"
#include "claimscope/utf8.hpp"

namespace claimscope {

struct RawClaim {
  std::string text;
  std::optional<std::string> id;
};

struct NormalizeOptions {
  // Terms kept in their original case (e.g. "DNA"); matched case-sensitively
  // on word boundaries.
  std::set<std::string> preserve;
  bool strip_leading_article = true;
};

// Canonical view of a claim: lowercase, a single leading space, no trailing
// full stop, single-spaced.
struct NormalizedClaim {
  std::string text;
  std::vector<std::string> words;
  std::vector<std::string> chars;
  std::vector<std::string> signs;

  std::size_t word_count() const { return words.size(); }
  std::size_t char_count() const { return chars.size(); }
};

namespace detail {

// Symbols that form a word on their own ("66%" is two words).
inline bool is_symbol_word(char c) {
  switch (c) {
    case '%': case '+': case '=': case '<': case '>': case '*': case '&':
    case '#': case '@': case '$': case '~': case '^': case '|': case '\\':
    case '`':
      return true;
    default:
      return false;
  }
}

// Bytes >= 0x80 belong to multi-byte code points; those are word
// constituents ("m³", "≥").
inline bool is_word_byte(char c) {
  return utf8::is_ascii_alnum(c) || static_cast<unsigned char>(c) >= 0x80;
}

// '.' and ':' inside a number ("0.5", "2:1") do not split it.
inline bool is_numeric_joiner(std::string_view text, std::size_t i) {
  char c = text[i];
  if (c != '.' && c != ':') return false;
  return i > 0 && i + 1 < text.size() && utf8::is_ascii_digit(text[i - 1]) &&
         utf8::is_ascii_digit(text[i + 1]);
}

// Walks canonical text emitting words and, optionally, punctuation signs.
inline std::vector<std::string> scan(std::string_view text,
                                     bool with_punctuation) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (is_word_byte(c) || is_numeric_joiner(text, i)) {
      current.push_back(c);
      continue;
    }
    flush();
    if (utf8::is_ascii_space(c)) continue;
    if (is_symbol_word(c) || with_punctuation) out.emplace_back(1, c);
  }
  flush();
  return out;
}

inline bool starts_with_article(std::string_view s, std::size_t& len) {
  for (std::string_view a : {"An", "an", "A", "a"}) {
    if (s.size() > a.size() && s.substr(0, a.size()) == a &&
        utf8::is_ascii_space(s[a.size()])) {
      len = a.size();
      return true;
    }
  }
  return false;
}

// Matches ^\d+[a-z]?\.(\s+|$) and returns the matched length (0 if none).
inline std::size_t claim_number_prefix(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && utf8::is_ascii_digit(s[i])) ++i;
  if (i == 0) return 0;
  if (i < s.size() && s[i] >= 'a' && s[i] <= 'z') ++i;
  if (i >= s.size() || s[i] != '.') return 0;
  ++i;
  std::size_t j = i;
  while (j < s.size() && utf8::is_ascii_space(s[j])) ++j;
  if (j == i && i != s.size()) return 0;
  return j;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && utf8::is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && utf8::is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string lowercase_except(std::string_view s,
                                    const std::set<std::string>& preserve) {
  std::vector<bool> keep(s.size(), false);
  for (const auto& term : preserve) {
    if (term.empty()) continue;
    for (std::size_t pos = s.find(term); pos != std::string_view::npos;
         pos = s.find(term, pos + 1)) {
      std::size_t end = pos + term.size();
      bool left_ok = pos == 0 || !is_word_byte(s[pos - 1]);
      bool right_ok = end == s.size() || !is_word_byte(s[end]);
      if (left_ok && right_ok) {
        for (std::size_t k = pos; k < end; ++k) keep[k] = true;
      }
    }
  }
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!keep[i]) out[i] = utf8::ascii_lower(out[i]);
  }
  return out;
}

}  // namespace detail

// Words of canonical text. Hyphens, slashes and other punctuation separate
// words; "%"-style symbols are words of their own.
inline std::vector<std::string> tokenize_words(std::string_view canonical) {
  return detail::scan(canonical, false);
}

// Words and punctuation marks, in order. Spaces are not signs.
inline std::vector<std::string> tokenize_signs(std::string_view canonical) {
  return detail::scan(canonical, true);
}

inline bool is_punctuation_sign(std::string_view sign) {
  return sign.size() == 1 && !detail::is_word_byte(sign[0]) &&
         !detail::is_symbol_word(sign[0]) && !utf8::is_ascii_space(sign[0]);
}

inline std::vector<std::string> tokenize_words(const NormalizedClaim& nc) {
  return nc.words;
}

inline std::vector<std::string> tokenize_signs(const NormalizedClaim& nc) {
  return nc.signs;
}

inline NormalizedClaim normalize(const RawClaim& raw,
                                 const NormalizeOptions& options = {}) {
  std::string_view s = detail::trim(raw.text);
  const std::string label = raw.id.value_or("<unnamed>");
  if (s.empty()) {
    throw Error(ErrorCode::kEmptyAfterNormalization,
                "claim " + label + " is blank");
  }

  // Claim numbers and articles may stack ("1. A ..."); strip until stable so
  // that normalize() is idempotent.
  for (bool changed = true; changed;) {
    changed = false;
    if (std::size_t n = detail::claim_number_prefix(s); n > 0) {
      s = detail::trim(s.substr(n));
      changed = true;
    }
    std::size_t article = 0;
    if (options.strip_leading_article &&
        detail::starts_with_article(s, article)) {
      s = detail::trim(s.substr(article));
      changed = true;
    }
  }

  std::string collapsed;
  collapsed.reserve(s.size());
  bool in_space = false;
  for (char c : s) {
    if (utf8::is_ascii_space(c)) {
      in_space = true;
      continue;
    }
    if (in_space && !collapsed.empty()) collapsed.push_back(' ');
    in_space = false;
    collapsed.push_back(c);
  }
  while (!collapsed.empty() &&
         (collapsed.back() == '.' || collapsed.back() == ' ')) {
    collapsed.pop_back();
  }
  if (collapsed.empty()) {
    throw Error(ErrorCode::kEmptyAfterNormalization,
                "nothing left of claim " + label);
  }

  NormalizedClaim nc;
  nc.text = " " + detail::lowercase_except(collapsed, options.preserve);
  nc.words = tokenize_words(nc.text);
  nc.chars = utf8::code_points(nc.text);
  nc.signs = tokenize_signs(nc.text);
  if (nc.words.empty()) {
    throw Error(ErrorCode::kEmptyAfterNormalization,
                "claim " + label + " contains no words");
  }
  return nc;
}

inline NormalizedClaim normalize(std::string_view text,
                                 const NormalizeOptions& options = {}) {
  return normalize(RawClaim{std::string(text), std::nullopt}, options);
}

// Wraps text that is already canonical (e.g. a branch cut from a normalized
// claim) without re-running article or number stripping.
inline NormalizedClaim from_canonical(std::string text) {
  if (text.empty() || text[0] != ' ' || text.back() == '.' || text.back() == ' ') {
    throw Error(ErrorCode::kInvalidArgument, "text is not in canonical form");
  }
  NormalizedClaim nc;
  nc.text = std::move(text);
  nc.words = tokenize_words(nc.text);
  nc.chars = utf8::code_points(nc.text);
  nc.signs = tokenize_signs(nc.text);
  if (nc.words.empty()) {
    throw Error(ErrorCode::kEmptyAfterNormalization, "canonical text has no words");
  }
  return nc;
}

}  // namespace claimscope

#endif  // CLAIMSCOPE_NORMALIZER_HPP
