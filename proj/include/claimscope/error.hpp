#ifndef CLAIMSCOPE_ERROR_HPP
#define CLAIMSCOPE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace claimscope {

enum class ErrorCode {
  kInvalidArgument,
  kEmptyAfterNormalization,
  kBackendUnavailable,
  kProtocolViolation,
  kAllTokensUnknown,
  kZeroInformation,
  kNegativeProbability,
  kMalformedMarkup,
  kFixtureCorrupt,
  kEmptyCorpus,
  kSampleTooLarge,
  kDegenerateInput,
  kNoCommonRange,
  kEmptyTree,
  kNoRelations,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyAfterNormalization: return "EmptyAfterNormalization";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kProtocolViolation: return "ProtocolViolation";
    case ErrorCode::kAllTokensUnknown: return "AllTokensUnknown";
    case ErrorCode::kZeroInformation: return "ZeroInformation";
    case ErrorCode::kNegativeProbability: return "NegativeProbability";
    case ErrorCode::kMalformedMarkup: return "MalformedMarkup";
    case ErrorCode::kFixtureCorrupt: return "FixtureCorrupt";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kSampleTooLarge: return "SampleTooLarge";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kNoCommonRange: return "NoCommonRange";
    case ErrorCode::kEmptyTree: return "EmptyTree";
    case ErrorCode::kNoRelations: return "NoRelations";
  }
  return "Unknown";
}

// All library failures are reported through this type; code() is what the
// CLI prints as ERROR:<code>.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace claimscope

#endif  // CLAIMSCOPE_ERROR_HPP
