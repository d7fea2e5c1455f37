// Alternatives add branch probabilities; disclaimers subtract them.

#include <cstdio>
#include <memory>

#include "claimscope/scorer.hpp"

int main() {
  namespace cs = claimscope;
  auto table = std::make_shared<const cs::FrequencyTable>(
      cs::TokenKind::kWord,
      std::unordered_map<std::string, double>{{"conductor", 2e-5}, {"made", 4e-4}, {"of", 3e-2},
                                              {"metal", 1e-4}, {"copper", 3e-5}, {"gold", 5e-5}});
  cs::Scorer scorer(cs::ModelKind::kWordFreq);
  scorer.set_word_table(table);

  const char* markup[] = {
      "+ conductor made of copper\n+ conductor made of gold\n",
      "+ conductor made of metal\n- conductor made of gold\n",
      "+ conductor made of gold\n- conductor made of metal\n",
  };
  for (const char* m : markup) {
    try {
      auto r = scorer.score_branches(cs::parse_explicit(m));
      std::printf("%zu branches: S = %.6f\n", r.branch_count, r.scope);
    } catch (const cs::Error& e) {
      std::printf("%s\n", e.what());
    }
  }
}
