#ifndef CLAIMSCOPE_ANALYSIS_HPP
#define CLAIMSCOPE_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "claimscope/corpus.hpp"
#include "claimscope/error.hpp"
#include "claimscope/scope.hpp"

namespace claimscope {

// 100 * population standard deviation / mean.
inline double rsd(std::span<const double> values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::kDegenerateInput, "rsd needs at least two values");
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (mean == 0.0 || !std::isfinite(mean)) {
    throw Error(ErrorCode::kDegenerateInput, "rsd of values with zero mean");
  }
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return 100.0 * std::sqrt(ss / n) / std::abs(mean);
}

inline double rsd(std::initializer_list<double> values) {
  return rsd(std::span<const double>(values.begin(), values.size()));
}

struct CurvePoint {
  double count = 0.0;  // word or character count
  double self_information = 0.0;
  double scope = 0.0;
};

struct SeriesCurve {
  std::string series_id;
  std::string model_id;
  std::vector<CurvePoint> points;

  void add(double count, const ScopeReport& r) {
    points.push_back({count, r.self_information, r.scope});
  }

  // Sorted by count; points sharing a count are averaged.
  SeriesCurve deduplicated() const {
    std::map<double, std::pair<CurvePoint, int>> groups;
    for (const auto& p : points) {
      auto& [acc, k] = groups[p.count];
      acc.count = p.count;
      acc.self_information += p.self_information;
      acc.scope += p.scope;
      ++k;
    }
    SeriesCurve out{series_id, model_id, {}};
    for (auto& [count, g] : groups) {
      auto [acc, k] = g;
      acc.self_information /= k;
      acc.scope /= k;
      out.points.push_back(acc);
    }
    return out;
  }

  // Linear interpolation of self-information; `x` must lie in the curve's range.
  double interpolate(double x) const {
    const auto& p = points;
    if (p.empty() || x < p.front().count || x > p.back().count) {
      throw Error(ErrorCode::kInvalidArgument, "interpolation outside the curve");
    }
    auto hi = std::lower_bound(p.begin(), p.end(), x,
                               [](const CurvePoint& a, double v) { return a.count < v; });
    if (hi->count == x) return hi->self_information;
    auto lo = hi - 1;
    const double t = (x - lo->count) / (hi->count - lo->count);
    return lo->self_information + t * (hi->self_information - lo->self_information);
  }
};

struct EvalSummary {
  std::string metric;
  double value = 0.0;
  std::string details;  // grid range, statistic conventions
};

// RSD of self-information across curves at each integer count of the
// common range, averaged over the range.
inline EvalSummary cross_series_rsd(const std::vector<SeriesCurve>& curves) {
  if (curves.size() < 2) {
    throw Error(ErrorCode::kNoCommonRange, "need at least two curves");
  }
  std::vector<SeriesCurve> dedup;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    dedup.push_back(c.deduplicated());
    if (dedup.back().points.empty()) {
      throw Error(ErrorCode::kNoCommonRange, "curve " + c.series_id + " is empty");
    }
    lo = std::max(lo, dedup.back().points.front().count);
    hi = std::min(hi, dedup.back().points.back().count);
  }
  const double first = std::ceil(lo);
  const double last = std::floor(hi);
  if (first > last) {
    throw Error(ErrorCode::kNoCommonRange, "curves share no integer count");
  }
  double sum = 0.0;
  std::size_t n = 0;
  std::vector<double> column(dedup.size());
  for (double x = first; x <= last; x += 1.0) {
    for (std::size_t k = 0; k < dedup.size(); ++k) column[k] = dedup[k].interpolate(x);
    sum += rsd(column);
    ++n;
  }
  EvalSummary s;
  s.metric = "cross_series_rsd";
  s.value = sum / static_cast<double>(n);
  s.details = "grid=" + std::to_string(static_cast<long>(first)) + ".." +
              std::to_string(static_cast<long>(last)) + " curves=" +
              std::to_string(dedup.size()) + " stddev=population";
  return s;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kDegenerateInput, "pearson needs two equal-length samples");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kDegenerateInput, "pearson of a constant sample");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Ranks starting at 1; ties share their average rank.
inline std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

inline double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDegenerateInput, "spearman needs equal-length samples");
  }
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  return pearson(rx, ry);
}

struct PairCheck {
  std::string from;
  std::string to;
  double scope_from = 0.0;
  double scope_to = 0.0;
  bool decreasing = false;
};

struct MonotonicityReport {
  double fraction = 0.0;  // strictly decreasing adjacent pairs / all pairs
  std::size_t decreasing = 0;
  std::vector<PairCheck> pairs;
};

// Claims are expected broad to narrow, so scope should fall pair by pair.
inline MonotonicityReport monotonicity_report(const std::vector<ScopeReport>& ordered) {
  if (ordered.size() < 2) {
    throw Error(ErrorCode::kDegenerateInput, "monotonicity needs at least two claims");
  }
  MonotonicityReport m;
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
    const auto& a = ordered[i];
    const auto& b = ordered[i + 1];
    PairCheck p{a.id, b.id, a.scope, b.scope, b.scope < a.scope};
    m.decreasing += p.decreasing;
    m.pairs.push_back(std::move(p));
  }
  m.fraction = static_cast<double>(m.decreasing) / static_cast<double>(m.pairs.size());
  return m;
}

struct RelationCheck {
  Relation relation;
  std::optional<double> scope_parent;
  std::optional<double> scope_child;
  bool verified = false;
  std::string error;  // error code name when scoring failed
};

struct HierarchyResult {
  double percent_verified = 0.0;
  std::size_t verified = 0;
  RelationSet relation_set = RelationSet::kEdges;
  std::vector<RelationCheck> checks;
};

using ClaimScorer = std::function<ScopeReport(const RawClaim&)>;

// A relation holds when the broader term scores the larger scope. With a
// context prefix, both terms are read as "<prefix> <term>".
inline HierarchyResult verify_hierarchy(const HierarchyTree& tree, const ClaimScorer& scorer,
                                        const std::optional<std::string>& context_prefix,
                                        RelationSet set = RelationSet::kEdges) {
  auto relations = tree.relations(set);
  if (relations.empty()) {
    throw Error(ErrorCode::kNoRelations, "hierarchy '" + tree.root.term + "' has no relations");
  }
  auto text_of = [&context_prefix](const std::string& term) {
    return context_prefix ? *context_prefix + " " + term : term;
  };
  std::map<std::string, std::pair<std::optional<double>, std::string>> cache;
  auto scope_of = [&](const std::string& term) {
    auto it = cache.find(term);
    if (it != cache.end()) return it->second;
    std::pair<std::optional<double>, std::string> v;
    try {
      v.first = scorer(RawClaim{text_of(term), term}).scope;
    } catch (const Error& e) {
      v.second = std::string(to_string(e.code()));
    }
    return cache[term] = v;
  };

  HierarchyResult out;
  out.relation_set = set;
  for (auto& rel : relations) {
    RelationCheck c;
    auto [sp, ep] = scope_of(rel.parent);
    auto [sc, ec] = scope_of(rel.child);
    c.scope_parent = sp;
    c.scope_child = sc;
    c.error = !ep.empty() ? ep : ec;
    c.verified = sp && sc && *sp > *sc;
    c.relation = std::move(rel);
    out.verified += c.verified;
    out.checks.push_back(std::move(c));
  }
  out.percent_verified =
      100.0 * static_cast<double>(out.verified) / static_cast<double>(out.checks.size());
  return out;
}

}  // namespace claimscope

#endif  // CLAIMSCOPE_ANALYSIS_HPP
