#ifndef CLAIMSCOPE_UTF8_HPP
#define CLAIMSCOPE_UTF8_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace claimscope::utf8 {

// Length in bytes of the sequence introduced by lead byte `c`. Invalid lead
// bytes are treated as single-byte sequences so that malformed input still
// splits into something countable.
inline std::size_t sequence_length(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xE) return 3;
  if ((c >> 3) == 0x1E) return 4;
  return 1;
}

// Splits text into one string per code point.
inline std::vector<std::string> code_points(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t len = sequence_length(static_cast<unsigned char>(text[i]));
    if (i + len > text.size()) len = text.size() - i;
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

inline std::size_t length(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size();) {
    i += sequence_length(static_cast<unsigned char>(text[i]));
    ++n;
  }
  return n;
}

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

}  // namespace claimscope::utf8

#endif  // CLAIMSCOPE_UTF8_HPP
