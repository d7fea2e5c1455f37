#ifndef CLAIMSCOPE_CSV_HPP
#define CLAIMSCOPE_CSV_HPP

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "claimscope/error.hpp"

namespace claimscope::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields may hold commas, doubled quotes and line
// breaks. Blank lines are skipped.
inline std::vector<Row> read(std::istream& in) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false;
  bool in_row = false;
  auto end_row = [&] {
    if (in_row || !field.empty()) {
      row.push_back(std::move(field));
      rows.push_back(std::move(row));
    }
    row.clear();
    field.clear();
    in_row = false;
  };
  for (char c; in.get(c);) {
    if (quoted) {
      if (c != '"') {
        field.push_back(c);
      } else if (in.peek() == '"') {
        in.get(c);
        field.push_back('"');
      } else {
        quoted = false;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        in_row = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        in_row = true;
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field.push_back(c);
    }
  }
  if (quoted) throw Error(ErrorCode::kFixtureCorrupt, "unterminated quoted CSV field");
  end_row();
  return rows;
}

inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline void write_row(std::ostream& out, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << escape(row[i]);
  }
  out << '\n';
}

}  // namespace claimscope::csv

#endif  // CLAIMSCOPE_CSV_HPP
