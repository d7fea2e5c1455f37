#ifndef CLAIMSCOPE_MODELS_HPP
#define CLAIMSCOPE_MODELS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimscope/error.hpp"
#include "claimscope/frequency_table.hpp"
#include "claimscope/normalizer.hpp"

namespace claimscope {

enum class ModelKind { kGpt2, kWordFreq, kWordCount, kCharFreq, kCharCount, kHybrid };

inline std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kGpt2: return "gpt2";
    case ModelKind::kWordFreq: return "word-freq";
    case ModelKind::kWordCount: return "word-count";
    case ModelKind::kCharFreq: return "char-freq";
    case ModelKind::kCharCount: return "char-count";
    case ModelKind::kHybrid: return "hybrid";
  }
  return "unknown";
}

inline std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (ModelKind k : {ModelKind::kGpt2, ModelKind::kWordFreq, ModelKind::kWordCount,
                      ModelKind::kCharFreq, ModelKind::kCharCount,
                      ModelKind::kHybrid}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

struct ModelConfig {
  // Words in WordNet.
  long word_vocab_size = 155327;
  long char_vocab_size = 50;
  double word_freq_cutoff = kDefaultWordCutoff;
  // Average frequency of the space character (hybrid model).
  double space_freq = 0.15;

  void validate() const {
    if (word_vocab_size < 2 || char_vocab_size < 2) {
      throw Error(ErrorCode::kInvalidArgument, "vocabulary sizes must be >= 2");
    }
    if (!(word_freq_cutoff > 0.0 && word_freq_cutoff < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "word cutoff outside (0,1)");
    }
    if (!(space_freq > 0.0 && space_freq < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "space frequency outside (0,1)");
    }
  }
};

// Natural-log probability per token, in claim order.
struct LogProbTerms {
  std::vector<double> terms;
  std::vector<std::string> token_labels;

  std::size_t size() const { return terms.size(); }
  bool empty() const { return terms.empty(); }

  void push_back(double term, std::string label) {
    if (!std::isfinite(term) || term > 0.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "log-probability term for '" + label + "' is not finite and <= 0");
    }
    terms.push_back(term);
    token_labels.push_back(std::move(label));
  }
};

namespace detail {

inline LogProbTerms uniform_terms(const std::vector<std::string>& tokens,
                                  long vocab_size) {
  // log(1/n) rather than -log(n) so a degenerate frequency table holding 1/n
  // yields bit-identical terms.
  const double term = std::log(1.0 / static_cast<double>(vocab_size));
  LogProbTerms out;
  out.terms.assign(tokens.size(), term);
  out.token_labels = tokens;
  return out;
}

}  // namespace detail

inline LogProbTerms word_count_terms(const NormalizedClaim& nc,
                                     const ModelConfig& cfg = {}) {
  return detail::uniform_terms(nc.words, cfg.word_vocab_size);
}

inline LogProbTerms char_count_terms(const NormalizedClaim& nc,
                                     const ModelConfig& cfg = {}) {
  return detail::uniform_terms(nc.chars, cfg.char_vocab_size);
}

// Spaces between words get q_s; every other character shares the remaining
// mass uniformly over the other N_c,max - 1 symbols.
inline LogProbTerms hybrid_count_terms(const NormalizedClaim& nc,
                                       const ModelConfig& cfg = {}) {
  const std::size_t nw = nc.word_count();
  const std::size_t nc_count = nc.char_count();
  if (nw < 1 || nc_count < nw) {
    throw Error(ErrorCode::kInvalidArgument, "hybrid model needs 1 <= N_w <= N_c");
  }
  const double space = std::log(cfg.space_freq);
  const double other = std::log((1.0 - cfg.space_freq) /
                                static_cast<double>(cfg.char_vocab_size - 1));
  LogProbTerms out;
  out.terms.reserve(nc_count);
  for (std::size_t i = 0; i + 1 < nw; ++i) out.push_back(space, " ");
  for (std::size_t i = 0; i < nc_count - nw + 1; ++i) out.push_back(other, "<char>");
  return out;
}

// Closed form of the hybrid scope, for cross-checking the term route.
inline double hybrid_scope_closed_form(std::size_t n_words, std::size_t n_chars,
                                       const ModelConfig& cfg = {}) {
  const double nw = static_cast<double>(n_words);
  const double nc = static_cast<double>(n_chars);
  return 1.0 / ((1.0 - nw) * std::log(cfg.space_freq) +
                (1.0 + nc - nw) *
                    (std::log(static_cast<double>(cfg.char_vocab_size - 1)) -
                     std::log(1.0 - cfg.space_freq)));
}

// Order-free product of token frequencies; unknown tokens fall to the
// table's cutoff.
inline LogProbTerms frequency_terms(std::span<const std::string> tokens,
                                    const FrequencyTable& table) {
  if (tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no tokens to score");
  }
  LogProbTerms out;
  out.terms.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(table.log_frequency(t), t);
  return out;
}

// One conditional log-probability for a sign given everything before it.
struct SignLogProb {
  std::optional<double> logprob;  // empty when the model cannot score the sign
  bool known() const { return logprob.has_value(); }
};

// Source of conditional sign probabilities (an LLM service or a stand-in).
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;

  // Element i scores signs[i + 1] given signs[0..i]; size is signs.size() - 1.
  virtual std::vector<SignLogProb> batch_logprobs(
      const std::vector<std::string>& signs) = 0;
};

// Chain-rule terms: the first sign is scored from word frequencies, the rest
// by the backend conditioned on the full prefix. A sign the backend cannot
// score takes the lowest term found for the other signs.
inline LogProbTerms llm_terms(const std::vector<std::string>& signs,
                              LlmBackend& backend,
                              const FrequencyTable& first_word_table) {
  if (signs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no signs to score");
  }
  std::vector<std::optional<double>> resolved(signs.size());
  resolved[0] = first_word_table.log_frequency(signs[0]);
  // A cutoff-valued first term is a guess, not an observation; it does not
  // anchor the unknown-sign rule.
  const bool first_is_anchor = first_word_table.contains(signs[0]);

  if (signs.size() > 1) {
    std::vector<SignLogProb> rest = backend.batch_logprobs(signs);
    if (rest.size() != signs.size() - 1) {
      throw Error(ErrorCode::kProtocolViolation,
                  "backend returned " + std::to_string(rest.size()) +
                      " results for " + std::to_string(signs.size() - 1) +
                      " signs");
    }
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (!rest[i].known()) continue;
      double lp = *rest[i].logprob;
      if (!std::isfinite(lp) || lp > 0.0) {
        throw Error(ErrorCode::kProtocolViolation,
                    "backend logprob for '" + signs[i + 1] + "' is not finite and <= 0");
      }
      resolved[i + 1] = lp;
    }
  }

  std::optional<double> floor;
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    if (!resolved[i] || (i == 0 && !first_is_anchor)) continue;
    floor = floor ? std::min(*floor, *resolved[i]) : *resolved[i];
  }
  LogProbTerms out;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (resolved[i]) {
      out.push_back(*resolved[i], signs[i]);
    } else if (floor) {
      out.push_back(*floor, signs[i]);
    } else {
      throw Error(ErrorCode::kAllTokensUnknown,
                  "no sign of the claim could be scored");
    }
  }
  return out;
}

}  // namespace claimscope

#endif  // CLAIMSCOPE_MODELS_HPP
