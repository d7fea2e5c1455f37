#ifndef CLAIMSCOPE_SCOPE_HPP
#define CLAIMSCOPE_SCOPE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "claimscope/error.hpp"
#include "claimscope/models.hpp"

namespace claimscope {

struct ScopeReport {
  std::string id;
  std::string model_id;
  double log_p = 0.0;
  double self_information = 0.0;  // nats
  double scope = 0.0;             // 1/nats
  double gm_log = 0.0;            // log of the geometric mean of token probabilities
  std::size_t n_tokens = 0;
  std::size_t branch_count = 1;
  bool heuristic_branches = false;
};

// Shannon self-information of an event with natural-log probability log_p.
inline double self_information(double log_p) {
  if (!std::isfinite(log_p) || log_p > 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "log-probability must be finite and <= 0");
  }
  return -log_p;
}

namespace detail {

// Neumaier-compensated sum; 300-term claims lose a few ulps otherwise.
inline double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

inline ScopeReport make_report(double log_p, std::size_t n_tokens,
                               std::string model_id) {
  if (log_p >= 0.0) {
    throw Error(ErrorCode::kZeroInformation,
                "claim probability is 1 or more; scope is unbounded");
  }
  ScopeReport r;
  r.model_id = std::move(model_id);
  r.log_p = log_p;
  r.self_information = self_information(log_p);
  r.scope = 1.0 / r.self_information;
  r.n_tokens = n_tokens;
  r.gm_log = log_p / static_cast<double>(n_tokens);
  return r;
}

}  // namespace detail

inline ScopeReport scope_single(const LogProbTerms& terms, std::string model_id) {
  if (terms.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot score an empty term list");
  }
  return detail::make_report(detail::compensated_sum(terms.terms), terms.size(),
                             std::move(model_id));
}

// Scope from the geometric-mean form: S = 1 / (N * log(1/<q>_GM)).
inline double scope_from_geometric_mean(double gm_log, std::size_t n_tokens) {
  return -1.0 / (static_cast<double>(n_tokens) * gm_log);
}

struct Branch {
  double weight = 1.0;
  LogProbTerms terms;
};

enum class BranchSource { kExplicit, kHeuristic };

// Claim probability as a weighted sum of per-branch products: alternatives
// add (+1), disclaimers subtract (-1).
struct BranchDecomposition {
  std::vector<Branch> branches;
  BranchSource source = BranchSource::kExplicit;

  void validate() const {
    if (branches.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "decomposition has no branches");
    }
    bool any_positive = false;
    for (const auto& b : branches) {
      if (!std::isfinite(b.weight) || b.weight == 0.0) {
        throw Error(ErrorCode::kInvalidArgument, "branch weights must be finite and non-zero");
      }
      if (b.terms.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "branch has no terms");
      }
      any_positive = any_positive || b.weight > 0.0;
    }
    if (!any_positive) {
      throw Error(ErrorCode::kInvalidArgument, "no positively weighted branch");
    }
  }
};

// Relative size below which a signed sum counts as zero.
inline constexpr double kSignedSumTolerance = 1e-12;

// log(sum_k w_k exp(x_k)) with the largest exponent factored out. Throws
// NegativeProbability when the sum is not safely positive.
inline double signed_log_sum_exp(std::span<const double> logs,
                                 std::span<const double> weights) {
  if (logs.empty() || logs.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument, "mismatched branch inputs");
  }
  const double max_log = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    const double e = std::exp(logs[k] - max_log);
    sum += weights[k] * e;
    scale = std::max(scale, std::abs(weights[k]) * e);
  }
  if (sum <= kSignedSumTolerance * scale) {
    throw Error(ErrorCode::kNegativeProbability,
                "weighted branch probabilities sum to a non-positive value; "
                "its logarithm is undefined");
  }
  return max_log + std::log(sum);
}

inline ScopeReport scope_branched(const BranchDecomposition& d, std::string model_id) {
  d.validate();
  std::vector<double> logs;
  std::vector<double> weights;
  std::size_t longest = 0;
  for (const auto& b : d.branches) {
    logs.push_back(detail::compensated_sum(b.terms.terms));
    weights.push_back(b.weight);
    longest = std::max(longest, b.terms.size());
  }
  ScopeReport r = detail::make_report(signed_log_sum_exp(logs, weights), longest,
                                      std::move(model_id));
  r.branch_count = d.branches.size();
  r.heuristic_branches = d.source == BranchSource::kHeuristic;
  return r;
}

}  // namespace claimscope

#endif  // CLAIMSCOPE_SCOPE_HPP
