// Scores one claim under the two count models and the hybrid model.

#include <cstdio>

#include "claimscope/scorer.hpp"

int main(int argc, char** argv) {
  const char* text = argc > 1 ? argv[1] : "A writing instrument comprising a pencil and an eraser.";
  auto nc = claimscope::normalize(text);
  std::printf("canonical: \"%s\" (%zu words, %zu characters)\n", nc.text.c_str(),
              nc.word_count(), nc.char_count());
  for (auto kind : {claimscope::ModelKind::kWordCount, claimscope::ModelKind::kCharCount,
                    claimscope::ModelKind::kHybrid}) {
    auto r = claimscope::Scorer(kind).score(text);
    std::printf("%-10s I = %9.4f nats  S = %.6f\n", r.model_id.c_str(), r.self_information,
                r.scope);
  }
}
