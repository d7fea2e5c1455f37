#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "claimscope/models.hpp"
#include "claimscope/scope.hpp"

namespace cs = claimscope;

namespace {

cs::LogProbTerms terms(std::initializer_list<double> xs) {
  cs::LogProbTerms t;
  for (double x : xs) t.push_back(x, "t");
  return t;
}

cs::BranchDecomposition two(const cs::LogProbTerms& a, double wa, const cs::LogProbTerms& b,
                            double wb) {
  cs::BranchDecomposition d;
  d.branches = {{wa, a}, {wb, b}};
  return d;
}

}  // namespace

TEST(SelfInformation, Basics) {
  EXPECT_EQ(cs::self_information(0.0), 0.0);
  EXPECT_EQ(cs::self_information(-10.0), 10.0);
  EXPECT_EQ(cs::self_information(-2.5) + cs::self_information(-4.0),
            cs::self_information(-6.5));
  EXPECT_THROW(cs::self_information(0.1), cs::Error);
  EXPECT_THROW(cs::self_information(NAN), cs::Error);
}

TEST(ScopeSingle, UnitTerm) {
  auto r = cs::scope_single(terms({-1.0}), "m");
  EXPECT_EQ(r.scope, 1.0);
  EXPECT_EQ(r.self_information, 1.0);
  EXPECT_EQ(r.n_tokens, 1u);
  EXPECT_EQ(r.branch_count, 1u);
  EXPECT_EQ(r.model_id, "m");
}

TEST(ScopeSingle, WordCountRow) {
  auto r = cs::scope_single(cs::word_count_terms(cs::normalize("A writing instrument.")),
                            "word-count");
  EXPECT_NEAR(r.scope, 0.041829, 5e-7);
  EXPECT_NEAR(r.log_p, 2 * r.gm_log, 1e-15);
}

TEST(ScopeSingle, ZeroInformation) {
  try {
    cs::scope_single(terms({0.0, 0.0}), "m");
    FAIL();
  } catch (const cs::Error& e) {
    EXPECT_EQ(e.code(), cs::ErrorCode::kZeroInformation);
  }
  EXPECT_THROW(cs::scope_single(cs::LogProbTerms{}, "m"), cs::Error);
}

TEST(ScopeSingle, GeometricMeanForm) {
  auto t = terms({-3.0, -1.25, -7.0, -0.5});
  auto r = cs::scope_single(t, "m");
  EXPECT_NEAR(cs::scope_from_geometric_mean(r.gm_log, r.n_tokens) / r.scope, 1.0, 1e-15);
}

TEST(ScopeBranched, EqualAlternativesHalveProbability) {
  auto t = terms({-2.0, -3.0, -4.5});
  auto single = cs::scope_single(t, "m");
  auto both = cs::scope_branched(two(t, 1, t, 1), "m");
  EXPECT_NEAR(single.self_information - both.self_information, std::log(2.0), 1e-13);
  EXPECT_EQ(both.branch_count, 2u);
  EXPECT_EQ(both.n_tokens, 3u);
}

TEST(ScopeBranched, IdenticalDisclaimerIsNegative) {
  auto t = terms({-2.0, -3.0});
  try {
    cs::scope_branched(two(t, 1, t, -1), "m");
    FAIL();
  } catch (const cs::Error& e) {
    EXPECT_EQ(e.code(), cs::ErrorCode::kNegativeProbability);
  }
}

TEST(ScopeBranched, DisclaimerBelowMinuend) {
  auto metal = terms({-2.0, -3.0});
  auto gold = terms({-2.0, -6.0});
  auto r = cs::scope_branched(two(metal, 1, gold, -1), "m");
  const double expected = std::log(std::exp(-5.0) - std::exp(-8.0));
  EXPECT_NEAR(r.log_p, expected, 1e-13);
  EXPECT_GT(r.self_information, 5.0);
}

TEST(ScopeBranched, StableForTinyProbabilities) {
  // exp(-4000) underflows; the factored form does not
  auto a = terms({-4000.0});
  auto b = terms({-4001.0});
  auto r = cs::scope_branched(two(a, 1, b, 1), "m");
  EXPECT_NEAR(r.log_p, -4000.0 + std::log1p(std::exp(-1.0)), 1e-9);
}

TEST(ScopeBranched, LongestBranchSetsN) {
  auto r = cs::scope_branched(two(terms({-1.0}), 1, terms({-1.0, -1.0, -1.0}), 1), "m");
  EXPECT_EQ(r.n_tokens, 3u);
}

TEST(BranchDecomposition, Validation) {
  cs::BranchDecomposition empty;
  EXPECT_THROW(empty.validate(), cs::Error);
  auto t = terms({-1.0});
  EXPECT_THROW(two(t, -1, t, -1).validate(), cs::Error);
  EXPECT_THROW(two(t, 1, t, 0).validate(), cs::Error);
  EXPECT_THROW(two(t, 1, cs::LogProbTerms{}, 1).validate(), cs::Error);
}

TEST(SignedLogSumExp, ToleranceEdge) {
  std::vector<double> logs = {-1.0, -1.0};
  std::vector<double> w = {1.0, -1.0};
  EXPECT_THROW(cs::signed_log_sum_exp(logs, w), cs::Error);
  std::vector<double> logs2 = {-1.0, -1.0 - 1e-6};
  EXPECT_NO_THROW(cs::signed_log_sum_exp(logs2, w));
  std::vector<double> mismatched = {1.0};
  EXPECT_THROW(cs::signed_log_sum_exp(logs, mismatched), cs::Error);
}
