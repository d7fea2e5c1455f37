#include <fstream>
#include <memory>

#include <gtest/gtest.h>

#include "claimscope/branching.hpp"
#include "claimscope/corpus.hpp"
#include "claimscope/scorer.hpp"

namespace cs = claimscope;

namespace {

std::shared_ptr<const cs::FrequencyTable> hammer_table(double steel, double metal) {
  return std::make_shared<const cs::FrequencyTable>(
      cs::TokenKind::kWord,
      std::unordered_map<std::string, double>{{"hammer", 1e-5},
                                              {"comprising", 1e-4},
                                              {"a", 2e-2},
                                              {"fiberglass", 1e-6},
                                              {"handle", 3e-5},
                                              {"and", 3e-2},
                                              {"head", 5e-5},
                                              {"of", 4e-2},
                                              {"steel", steel},
                                              {"metal", metal},
                                              {"aluminum", 1e-5}});
}

}  // namespace

TEST(ParseExplicit, Alternatives) {
  auto s = cs::parse_explicit(
      "+ electrical conductor made of copper\n+ electrical conductor made of gold\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.weights, (std::vector<int>{1, 1}));
  EXPECT_EQ(s.branch_texts[1], "electrical conductor made of gold");
  EXPECT_FALSE(s.heuristic);
}

TEST(ParseExplicit, Disclaimer) {
  auto s = cs::parse_explicit(
      "# metal except gold\n+ electrical conductor made of metal\n- electrical conductor made of gold");
  EXPECT_EQ(s.weights, (std::vector<int>{1, -1}));
}

TEST(ParseExplicit, SingleBranch) {
  auto s = cs::parse_explicit("+ hammer\n");
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.weights[0], 1);
}

TEST(ParseExplicit, Malformed) {
  for (const char* bad : {"hammer\n", "+hammer\n", "* hammer\n", "- hammer\n+ pencil\n", "+ \n",
                          "", "+ a\n\n+ b\n"}) {
    try {
      cs::parse_explicit(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const cs::Error& e) {
      EXPECT_EQ(e.code(), cs::ErrorCode::kMalformedMarkup) << bad;
    }
  }
}

TEST(ParseBranchFile, ShippedFixture) {
  std::ifstream in(std::string(CLAIMSCOPE_DATA_DIR) + "/branches/table1_hammer.branches");
  auto blocks = cs::parse_branch_file(in);
  ASSERT_EQ(blocks.size(), 4u);
  EXPECT_EQ(blocks[1].weights, (std::vector<int>{1, -1}));
  EXPECT_EQ(blocks[3].branch_texts[0], "electrical conductor made of metal");
}

TEST(SplitHeuristic, Alternative) {
  auto s = cs::split_heuristic(
      cs::normalize("Hammer comprising a fiberglass handle and a head of steel or aluminum."));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.heuristic);
  EXPECT_EQ(s.branch_texts[0], " hammer comprising a fiberglass handle and a head of steel");
  EXPECT_EQ(s.branch_texts[1], " hammer comprising a fiberglass handle and a head of aluminum");
  EXPECT_EQ(s.weights, (std::vector<int>{1, 1}));
}

TEST(SplitHeuristic, Disclaimer) {
  auto s = cs::split_heuristic(
      cs::normalize("Hammer comprising a fiberglass handle and a head of metal except steel."));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.branch_texts[0], " hammer comprising a fiberglass handle and a head of metal");
  EXPECT_EQ(s.branch_texts[1], " hammer comprising a fiberglass handle and a head of steel");
  EXPECT_EQ(s.weights, (std::vector<int>{1, -1}));
}

TEST(SplitHeuristic, NoKeyword) {
  auto nc = cs::normalize("Hammer comprising a handle");
  auto s = cs::split_heuristic(nc);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.branch_texts[0], nc.text);
  EXPECT_EQ(s.weights[0], 1);
}

TEST(SplitHeuristic, RangeWordsAreNotAlternatives) {
  for (const char* text : {"Particles of 300 nm or less", "A film of 5 layers or more",
                           "Ratio equal to 2 or equal to 3"}) {
    EXPECT_EQ(cs::split_heuristic(cs::normalize(text)).size(), 1u) << text;
  }
}

TEST(SplitHeuristic, ClauseInArmFallsBack) {
  auto s = cs::split_heuristic(cs::normalize("Device with a lid or a cap, the cap being red"));
  EXPECT_EQ(s.size(), 1u);
}

TEST(SplitHeuristic, ArmStopsAtComma) {
  auto s = cs::split_heuristic(cs::normalize("Device, made of copper or gold"));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.branch_texts[0], " device, made of copper");
  EXPECT_EQ(s.branch_texts[1], " device, made of gold");
}

TEST(SplitHeuristic, FixtureClaimsWithRangesStayWhole) {
  auto series = cs::load_series(std::string(CLAIMSCOPE_DATA_DIR) + "/series");
  for (const auto& s : series) {
    for (const auto& c : s.claims) {
      if (*c.id != "A4.6" && *c.id != "A9.18") continue;
      auto nc = cs::normalize(c);
      auto spec = cs::split_heuristic(nc);
      // "or less" / "or equal" are ranges, not alternatives
      EXPECT_EQ(spec.size(), 1u) << *c.id;
      EXPECT_EQ(spec.branch_texts[0], nc.text);
    }
  }
}

TEST(ScorerBranches, HeuristicDisclaimerGoesNegative) {
  cs::Scorer scorer(cs::ModelKind::kWordFreq);
  scorer.set_word_table(hammer_table(/*steel=*/2e-4, /*metal=*/1e-4));
  scorer.set_branch_mode(cs::BranchMode::kHeuristic);
  try {
    scorer.score("Hammer comprising a fiberglass handle and a head of metal except steel.");
    FAIL();
  } catch (const cs::Error& e) {
    EXPECT_EQ(e.code(), cs::ErrorCode::kNegativeProbability);
  }
}

TEST(ScorerBranches, HeuristicDisclaimerPositiveWhenMetalCommoner) {
  cs::Scorer scorer(cs::ModelKind::kWordFreq);
  scorer.set_word_table(hammer_table(1e-5, 1e-4));
  scorer.set_branch_mode(cs::BranchMode::kHeuristic);
  auto r = scorer.score("Hammer comprising a fiberglass handle and a head of metal except steel.");
  EXPECT_TRUE(r.heuristic_branches);
  EXPECT_EQ(r.branch_count, 2u);
  scorer.set_branch_mode(cs::BranchMode::kNone);
  auto plain = scorer.score("Hammer comprising a fiberglass handle and a head of metal except steel.");
  EXPECT_NE(r.scope, plain.scope);
}

TEST(ScorerBranches, NoKeywordMatchesSingle) {
  cs::Scorer single(cs::ModelKind::kCharCount);
  cs::Scorer heuristic(cs::ModelKind::kCharCount);
  heuristic.set_branch_mode(cs::BranchMode::kHeuristic);
  const char* text = "Hammer comprising a fiberglass handle and a metal head.";
  EXPECT_EQ(single.score(text).scope, heuristic.score(text).scope);
}

TEST(ScorerBranches, ExplicitCountAlternatives) {
  cs::Scorer scorer(cs::ModelKind::kWordCount);
  auto spec = cs::parse_explicit(
      "+ Hammer comprising a fiberglass handle and a steel head.\n"
      "+ Hammer comprising a fiberglass handle and an aluminum head.\n");
  auto r = scorer.score_branches(spec, "5a");
  const double one = 9 * std::log(155327.0);
  EXPECT_NEAR(r.self_information, one - std::log(2.0), 1e-12);
  EXPECT_EQ(r.id, "5a");
  EXPECT_FALSE(r.heuristic_branches);
}
