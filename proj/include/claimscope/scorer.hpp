#ifndef CLAIMSCOPE_SCORER_HPP
#define CLAIMSCOPE_SCORER_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "claimscope/branching.hpp"
#include "claimscope/error.hpp"
#include "claimscope/frequency_table.hpp"
#include "claimscope/models.hpp"
#include "claimscope/normalizer.hpp"
#include "claimscope/scope.hpp"

namespace claimscope {

enum class BranchMode { kNone, kExplicit, kHeuristic };

inline std::string_view to_string(BranchMode mode) {
  switch (mode) {
    case BranchMode::kNone: return "none";
    case BranchMode::kExplicit: return "explicit";
    case BranchMode::kHeuristic: return "heuristic";
  }
  return "unknown";
}

inline std::optional<BranchMode> parse_branch_mode(std::string_view name) {
  for (BranchMode m : {BranchMode::kNone, BranchMode::kExplicit, BranchMode::kHeuristic}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

// normalize -> (branch) -> terms -> scope, for one configured model.
class Scorer {
 public:
  explicit Scorer(ModelKind model, ModelConfig config = {}, NormalizeOptions options = {})
      : model_(model), config_(config), options_(std::move(options)) {
    config_.validate();
  }

  ModelKind model() const { return model_; }
  const ModelConfig& config() const { return config_; }
  const NormalizeOptions& normalize_options() const { return options_; }
  BranchMode branch_mode() const { return branch_mode_; }

  Scorer& set_word_table(std::shared_ptr<const FrequencyTable> table) {
    if (table && table->kind() != TokenKind::kWord) {
      throw Error(ErrorCode::kInvalidArgument, "word table has character entries");
    }
    word_table_ = std::move(table);
    return *this;
  }
  Scorer& set_char_table(std::shared_ptr<const FrequencyTable> table) {
    if (table && table->kind() != TokenKind::kCharacter) {
      throw Error(ErrorCode::kInvalidArgument, "character table has word entries");
    }
    char_table_ = std::move(table);
    return *this;
  }
  Scorer& set_backend(std::shared_ptr<LlmBackend> backend) {
    backend_ = std::move(backend);
    return *this;
  }
  // kExplicit only affects score_branches(); score() treats it like kNone.
  Scorer& set_branch_mode(BranchMode mode) {
    branch_mode_ = mode;
    return *this;
  }

  // Fails early when the model lacks its table or backend.
  void check_ready() const {
    switch (model_) {
      case ModelKind::kWordFreq:
        if (!word_table_) throw Error(ErrorCode::kInvalidArgument, "word-freq needs a word table");
        break;
      case ModelKind::kCharFreq:
        if (!char_table_) {
          throw Error(ErrorCode::kInvalidArgument, "char-freq needs a character table");
        }
        break;
      case ModelKind::kGpt2:
        if (!word_table_) {
          throw Error(ErrorCode::kInvalidArgument, "gpt2 needs a word table for the first word");
        }
        if (!backend_) throw Error(ErrorCode::kBackendUnavailable, "no backend configured");
        break;
      default:
        break;
    }
  }

  LogProbTerms terms(const NormalizedClaim& nc) const {
    check_ready();
    switch (model_) {
      case ModelKind::kWordCount: return word_count_terms(nc, config_);
      case ModelKind::kCharCount: return char_count_terms(nc, config_);
      case ModelKind::kHybrid: return hybrid_count_terms(nc, config_);
      case ModelKind::kWordFreq: return frequency_terms(nc.words, *word_table_);
      case ModelKind::kCharFreq: return frequency_terms(nc.chars, *char_table_);
      case ModelKind::kGpt2: return llm_terms(nc.signs, *backend_, *word_table_);
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown model");
  }

  ScopeReport score(const RawClaim& raw) const {
    NormalizedClaim nc = normalize(raw, options_);
    ScopeReport r;
    if (branch_mode_ == BranchMode::kHeuristic) {
      r = score_decomposition(split_heuristic(nc));
    } else {
      r = scope_single(terms(nc), std::string(to_string(model_)));
    }
    r.id = raw.id.value_or("");
    return r;
  }

  ScopeReport score(std::string_view text) const {
    return score(RawClaim{std::string(text), std::nullopt});
  }

  // Branch texts are raw claim text (normalized here), except for heuristic
  // specs whose texts are already canonical.
  ScopeReport score_branches(const BranchSpec& spec, std::string id = "") const {
    ScopeReport r = score_decomposition(spec);
    r.id = std::move(id);
    return r;
  }

 private:
  ScopeReport score_decomposition(const BranchSpec& spec) const {
    if (spec.size() == 0 || spec.size() != spec.weights.size()) {
      throw Error(ErrorCode::kMalformedMarkup, "branch texts and weights do not match");
    }
    const std::string model_id(to_string(model_));
    auto canonical = [&](const std::string& text) {
      return spec.heuristic ? from_canonical(text) : normalize(text, options_);
    };
    if (spec.size() == 1 && spec.weights[0] == 1) {
      ScopeReport r = scope_single(terms(canonical(spec.branch_texts[0])), model_id);
      r.heuristic_branches = spec.heuristic;
      return r;
    }
    BranchDecomposition d;
    d.source = spec.heuristic ? BranchSource::kHeuristic : BranchSource::kExplicit;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      d.branches.push_back(Branch{static_cast<double>(spec.weights[k]),
                                  terms(canonical(spec.branch_texts[k]))});
    }
    return scope_branched(d, model_id);
  }

  ModelKind model_;
  ModelConfig config_;
  NormalizeOptions options_;
  BranchMode branch_mode_ = BranchMode::kNone;
  std::shared_ptr<const FrequencyTable> word_table_;
  std::shared_ptr<const FrequencyTable> char_table_;
  std::shared_ptr<LlmBackend> backend_;
};

}  // namespace claimscope

#endif  // CLAIMSCOPE_SCORER_HPP
