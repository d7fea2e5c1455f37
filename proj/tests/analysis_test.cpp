#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "claimscope/analysis.hpp"
#include "claimscope/scorer.hpp"

namespace cs = claimscope;

namespace {

cs::SeriesCurve curve(std::string id, std::vector<std::pair<double, double>> pts) {
  cs::SeriesCurve c{std::move(id), "m", {}};
  for (auto [x, i] : pts) c.points.push_back({x, i, 1.0 / i});
  return c;
}

cs::HierarchyTree tree_of(const std::string& text) {
  std::istringstream in(text);
  return cs::parse_hierarchy(in);
}

cs::ScopeReport report(std::string id, double scope) {
  cs::ScopeReport r;
  r.id = std::move(id);
  r.scope = scope;
  return r;
}

}  // namespace

TEST(Rsd, Examples) {
  EXPECT_EQ(cs::rsd({5.0, 5.0, 5.0}), 0.0);
  EXPECT_DOUBLE_EQ(cs::rsd({1.0, 3.0}), 50.0);
  EXPECT_DOUBLE_EQ(cs::rsd({2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0}), 40.0);
}

TEST(Rsd, Degenerate) {
  EXPECT_THROW(cs::rsd({1.0}), cs::Error);
  EXPECT_THROW(cs::rsd({-1.0, 1.0}), cs::Error);
}

TEST(Curve, DeduplicateAverages) {
  auto c = curve("s", {{84, 10.0}, {12, 2.0}, {84, 20.0}}).deduplicated();
  ASSERT_EQ(c.points.size(), 2u);
  EXPECT_EQ(c.points[0].count, 12.0);
  EXPECT_EQ(c.points[1].self_information, 15.0);
}

TEST(Curve, Interpolate) {
  auto c = curve("s", {{2, 10.0}, {6, 30.0}});
  EXPECT_EQ(c.interpolate(2), 10.0);
  EXPECT_EQ(c.interpolate(3), 15.0);
  EXPECT_EQ(c.interpolate(6), 30.0);
  EXPECT_THROW(c.interpolate(7), cs::Error);
}

TEST(CrossSeriesRsd, IdenticalCurves) {
  auto a = curve("a", {{1, 3.0}, {4, 9.0}, {10, 17.0}});
  EXPECT_EQ(cs::cross_series_rsd({a, a}).value, 0.0);
  EXPECT_EQ(cs::cross_series_rsd({a, a, a, a, a}).value, 0.0);
}

TEST(CrossSeriesRsd, CommonRangeOnly) {
  auto a = curve("a", {{1, 10.0}, {3, 10.0}});
  auto b = curve("b", {{2, 30.0}, {5, 30.0}});
  auto s = cs::cross_series_rsd({a, b});
  EXPECT_DOUBLE_EQ(s.value, 50.0);
  EXPECT_NE(s.details.find("grid=2..3"), std::string::npos);
}

TEST(CrossSeriesRsd, NoCommonRange) {
  auto a = curve("a", {{1, 1.0}, {2, 2.0}});
  auto b = curve("b", {{5, 1.0}, {6, 2.0}});
  try {
    cs::cross_series_rsd({a, b});
    FAIL();
  } catch (const cs::Error& e) {
    EXPECT_EQ(e.code(), cs::ErrorCode::kNoCommonRange);
  }
  EXPECT_THROW(cs::cross_series_rsd({a}), cs::Error);
  // overlap without an integer inside it
  auto c = curve("c", {{1.2, 1.0}, {1.8, 2.0}});
  auto d = curve("d", {{1.3, 1.0}, {1.9, 2.0}});
  EXPECT_THROW(cs::cross_series_rsd({c, d}), cs::Error);
}

TEST(Pearson, Basics) {
  std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> y = {2, 1, 4, 3, 7};
  EXPECT_DOUBLE_EQ(cs::pearson(x, x), 1.0);
  std::vector<double> neg = {-1, -2, -3, -4, -5};
  EXPECT_DOUBLE_EQ(cs::pearson(x, neg), -1.0);
  EXPECT_NEAR(cs::pearson(x, y), 12.0 / std::sqrt(212.0), 1e-15);
  std::vector<double> flat = {1, 1, 1, 1, 1};
  EXPECT_THROW(cs::pearson(x, flat), cs::Error);
  std::vector<double> shorter = {1, 2};
  EXPECT_THROW(cs::pearson(x, shorter), cs::Error);
}

TEST(Spearman, TiesAndMonotoneMaps) {
  std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> cubed = {1, 8, 27, 64, 125};
  EXPECT_DOUBLE_EQ(cs::spearman(x, cubed), 1.0);
  std::vector<double> tied = {10, 20, 20, 30};
  EXPECT_EQ(cs::average_ranks(tied), (std::vector<double>{1, 2.5, 2.5, 4}));
}

TEST(Monotonicity, Fractions) {
  auto m = cs::monotonicity_report({report("a", 3), report("b", 2), report("c", 2), report("d", 1)});
  EXPECT_EQ(m.pairs.size(), 3u);
  EXPECT_EQ(m.decreasing, 2u);
  EXPECT_DOUBLE_EQ(m.fraction, 2.0 / 3.0);
  EXPECT_FALSE(m.pairs[1].decreasing);
  EXPECT_EQ(cs::monotonicity_report({report("a", 1), report("b", 1)}).fraction, 0.0);
  EXPECT_THROW(cs::monotonicity_report({report("a", 1)}), cs::Error);
}

TEST(Hierarchy, MotorVerifiedUnderWordCount) {
  cs::Scorer scorer(cs::ModelKind::kWordCount);
  auto fn = [&](const cs::RawClaim& c) { return scorer.score(c); };
  auto r = cs::verify_hierarchy(tree_of("motor\n  electric motor\n    permanent magnet synchronous motor\n"), fn,
                                std::nullopt);
  EXPECT_EQ(r.checks.size(), 2u);
  EXPECT_EQ(r.percent_verified, 100.0);
  auto closure = cs::verify_hierarchy(
      tree_of("motor\n  electric motor\n    permanent magnet synchronous motor\n"), fn, std::nullopt,
      cs::RelationSet::kClosure);
  EXPECT_EQ(closure.checks.size(), 3u);
  EXPECT_EQ(closure.relation_set, cs::RelationSet::kClosure);
}

TEST(Hierarchy, CircumlocutionFails) {
  cs::Scorer scorer(cs::ModelKind::kWordCount);
  auto r = cs::verify_hierarchy(tree_of("computing device\n  computer\n"),
                                [&](const cs::RawClaim& c) { return scorer.score(c); },
                                std::nullopt);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_FALSE(r.checks[0].verified);
  EXPECT_EQ(r.percent_verified, 0.0);
}

TEST(Hierarchy, ContextPrefixIsApplied) {
  std::vector<std::string> seen;
  auto fn = [&](const cs::RawClaim& c) {
    seen.push_back(c.text);
    return cs::Scorer(cs::ModelKind::kCharCount).score(c);
  };
  auto r = cs::verify_hierarchy(tree_of("motor\n  electric motor\n"), fn,
                                std::string("A vehicle comprising a"));
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen[0], "A vehicle comprising a motor");
  EXPECT_EQ(r.percent_verified, 100.0);
}

TEST(Hierarchy, ScoringErrorsCountAsUnverified) {
  auto fn = [](const cs::RawClaim& c) -> cs::ScopeReport {
    if (c.text == "bad") throw cs::Error(cs::ErrorCode::kAllTokensUnknown, "x");
    return cs::Scorer(cs::ModelKind::kWordCount).score(c);
  };
  auto r = cs::verify_hierarchy(tree_of("root term\n  bad\n  root term here\n"), fn, std::nullopt);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_FALSE(r.checks[0].verified);
  EXPECT_EQ(r.checks[0].error, "AllTokensUnknown");
  EXPECT_TRUE(r.checks[1].verified);
  EXPECT_EQ(r.percent_verified, 50.0);
}

TEST(Hierarchy, SingleNodeHasNoRelations) {
  cs::Scorer scorer(cs::ModelKind::kWordCount);
  try {
    cs::verify_hierarchy(tree_of("motor\n"), [&](const cs::RawClaim& c) { return scorer.score(c); },
                         std::nullopt);
    FAIL();
  } catch (const cs::Error& e) {
    EXPECT_EQ(e.code(), cs::ErrorCode::kNoRelations);
  }
}
