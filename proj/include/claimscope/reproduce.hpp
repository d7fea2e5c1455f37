#ifndef CLAIMSCOPE_REPRODUCE_HPP
#define CLAIMSCOPE_REPRODUCE_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "claimscope/analysis.hpp"
#include "claimscope/corpus.hpp"
#include "claimscope/models.hpp"
#include "claimscope/normalizer.hpp"
#include "claimscope/report.hpp"
#include "claimscope/scorer.hpp"

// Harness pieces shared by the CLI and the test suites: scoring fixture
// series and comparing against golden tables.
namespace claimscope {

// True when both values print identically with `decimals` decimals.
inline bool matches_printed(double computed, double golden, int decimals = 6) {
  char a[64];
  char b[64];
  std::snprintf(a, sizeof a, "%.*f", decimals, computed);
  std::snprintf(b, sizeof b, "%.*f", decimals, golden);
  return std::string(a) == b;
}

inline std::optional<std::size_t> golden_column(ModelKind kind) {
  const auto name = to_string(kind);
  for (std::size_t k = 0; k < kGoldenModels.size(); ++k) {
    if (kGoldenModels[k] == name) return k;
  }
  return std::nullopt;
}

struct CellCheck {
  std::string ref;
  std::string model_id;
  std::optional<double> computed;
  double golden = 0.0;
  bool match = false;
  std::string error;
};

struct GoldenComparison {
  std::vector<CellCheck> cells;

  std::size_t matched(const std::string& model_id) const {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.model_id == model_id && c.match;
    return n;
  }
  std::size_t total(const std::string& model_id) const {
    std::size_t n = 0;
    for (const auto& c : cells) n += c.model_id == model_id;
    return n;
  }
  const CellCheck* find(const std::string& ref, const std::string& model_id) const {
    for (const auto& c : cells) {
      if (c.ref == ref && c.model_id == model_id) return &c;
    }
    return nullptr;
  }
};

inline std::map<std::string, const RawClaim*> index_claims(const std::vector<ClaimSeries>& series) {
  std::map<std::string, const RawClaim*> out;
  for (const auto& s : series) {
    for (const auto& c : s.claims) out[*c.id] = &c;
  }
  return out;
}

// Scores every golden row that has a transcribed claim. Rows without a
// claim are skipped.
inline GoldenComparison compare_with_golden(const std::vector<ClaimSeries>& series,
                                            const std::vector<GoldenRow>& golden,
                                            const std::vector<const Scorer*>& scorers,
                                            int decimals = 6) {
  auto claims = index_claims(series);
  GoldenComparison out;
  for (const auto* scorer : scorers) {
    const auto column = golden_column(scorer->model());
    if (!column) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no golden column for model " + std::string(to_string(scorer->model())));
    }
    for (const auto& row : golden) {
      auto it = claims.find(row.ref);
      if (it == claims.end()) continue;
      CellCheck c;
      c.ref = row.ref;
      c.model_id = std::string(to_string(scorer->model()));
      c.golden = row.scope[*column];
      try {
        c.computed = scorer->score(*it->second).scope;
        c.match = matches_printed(*c.computed, c.golden, decimals);
      } catch (const Error& e) {
        c.error = std::string(to_string(e.code()));
      }
      out.cells.push_back(std::move(c));
    }
  }
  return out;
}

using Matrix5 = std::array<std::array<double, 5>, 5>;

// Pearson correlation between every pair of golden scope columns.
inline Matrix5 golden_pearson_matrix(const std::vector<GoldenRow>& rows) {
  std::array<std::vector<double>, 5> cols;
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < 5; ++k) cols[k].push_back(r.scope[k]);
  }
  Matrix5 m{};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) m[i][j] = i == j ? 1.0 : pearson(cols[i], cols[j]);
  }
  return m;
}

enum class CountGrid { kWords, kChars };

inline std::string_view to_string(CountGrid g) {
  return g == CountGrid::kWords ? "words" : "characters";
}

// One curve per series: self-information against word or character count.
// Claims that fail to score are left out of their curve.
inline std::vector<SeriesCurve> series_curves(const std::vector<ClaimSeries>& series,
                                              const Scorer& scorer, CountGrid grid) {
  std::vector<SeriesCurve> out;
  for (const auto& s : series) {
    SeriesCurve curve{s.series_id, std::string(to_string(scorer.model())), {}};
    for (const auto& c : s.claims) {
      try {
        NormalizedClaim nc = normalize(c, scorer.normalize_options());
        const double x = static_cast<double>(grid == CountGrid::kWords ? nc.word_count()
                                                                       : nc.char_count());
        curve.add(x, scorer.score(c));
      } catch (const Error&) {
      }
    }
    out.push_back(std::move(curve));
  }
  return out;
}

// Curves straight from the golden table, using its word counts and I = 1/S.
inline std::vector<SeriesCurve> golden_curves(const std::vector<GoldenRow>& rows,
                                              std::size_t column) {
  std::vector<SeriesCurve> out;
  std::map<std::string, std::size_t> index;
  for (const auto& r : rows) {
    const auto sid = r.ref.substr(0, r.ref.find('.'));
    auto [it, inserted] = index.emplace(sid, out.size());
    if (inserted) out.push_back({sid, std::string(kGoldenModels[column]), {}});
    const double s = r.scope[column];
    out[it->second].points.push_back({static_cast<double>(r.word_count), 1.0 / s, s});
  }
  return out;
}

}  // namespace claimscope

#endif  // CLAIMSCOPE_REPRODUCE_HPP
