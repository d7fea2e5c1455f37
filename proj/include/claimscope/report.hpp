#ifndef CLAIMSCOPE_REPORT_HPP
#define CLAIMSCOPE_REPORT_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "claimscope/csv.hpp"
#include "claimscope/error.hpp"
#include "claimscope/scope.hpp"

namespace claimscope {

// Either a report or the error that stopped one claim.
struct ScoreOutcome {
  std::string id;
  std::string model_id;
  std::variant<ScopeReport, Error> result;

  bool ok() const { return std::holds_alternative<ScopeReport>(result); }
  const ScopeReport& report() const { return std::get<ScopeReport>(result); }
  const Error& error() const { return std::get<Error>(result); }
};

inline std::string format_g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline const csv::Row& report_header() {
  static const csv::Row header = {"id", "model", "n_tokens", "log_p", "self_information",
                                  "scope"};
  return header;
}

inline csv::Row report_row(const ScoreOutcome& o) {
  if (!o.ok()) {
    return {o.id, o.model_id, "ERROR:" + std::string(to_string(o.error().code())), "", "", ""};
  }
  const auto& r = o.report();
  return {o.id,
          r.model_id,
          std::to_string(r.n_tokens),
          format_g6(r.log_p),
          format_g6(r.self_information),
          format_g6(r.scope)};
}

inline nlohmann::json report_json(const ScoreOutcome& o) {
  nlohmann::json j = {{"id", o.id}, {"model", o.model_id}};
  if (!o.ok()) {
    j["error"] = std::string(to_string(o.error().code()));
    j["message"] = o.error().what();
    return j;
  }
  const auto& r = o.report();
  j["n_tokens"] = r.n_tokens;
  j["log_p"] = r.log_p;
  j["self_information"] = r.self_information;
  j["scope"] = r.scope;
  if (r.branch_count > 1 || r.heuristic_branches) {
    j["branch_count"] = r.branch_count;
    j["heuristic_branches"] = r.heuristic_branches;
  }
  return j;
}

// CSV (header first) or one JSON object per line.
class ReportWriter {
 public:
  ReportWriter(std::ostream& out, bool json) : out_(out), json_(json) {}

  void write(const ScoreOutcome& o) {
    if (json_) {
      out_ << report_json(o).dump() << '\n';
      return;
    }
    if (!header_written_) {
      csv::write_row(out_, report_header());
      header_written_ = true;
    }
    csv::write_row(out_, report_row(o));
  }

 private:
  std::ostream& out_;
  bool json_;
  bool header_written_ = false;
};

}  // namespace claimscope

#endif  // CLAIMSCOPE_REPORT_HPP
