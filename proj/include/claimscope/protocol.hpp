#ifndef CLAIMSCOPE_PROTOCOL_HPP
#define CLAIMSCOPE_PROTOCOL_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "claimscope/error.hpp"
#include "claimscope/models.hpp"

// JSON shapes shared by the HTTP client and the mock server.
namespace claimscope::protocol {

inline constexpr const char* kVersion = "claimscope-llm/1";
inline constexpr const char* kHealthPath = "/health";
inline constexpr const char* kSignPath = "/v1/sign_logprob";
inline constexpr const char* kBatchPath = "/v1/batch_logprobs";

inline nlohmann::json to_json(const SignLogProb& r) {
  nlohmann::json j;
  j["logprob"] = r.logprob ? nlohmann::json(*r.logprob) : nlohmann::json(nullptr);
  j["known"] = r.known();
  return j;
}

// Throws ProtocolViolation unless `j` is {"logprob": number<=0 | null,
// "known": bool} with known == (logprob != null).
inline SignLogProb sign_result_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("known") || !j["known"].is_boolean() ||
      !j.contains("logprob")) {
    throw Error(ErrorCode::kProtocolViolation, "malformed sign result: " + j.dump());
  }
  const bool known = j["known"].get<bool>();
  const auto& lp = j["logprob"];
  if (known != !lp.is_null() || (known && !lp.is_number())) {
    throw Error(ErrorCode::kProtocolViolation, "inconsistent sign result: " + j.dump());
  }
  SignLogProb r;
  if (known) {
    const double v = lp.get<double>();
    if (!std::isfinite(v) || v > 0.0) {
      throw Error(ErrorCode::kProtocolViolation, "logprob out of range: " + j.dump());
    }
    r.logprob = v;
  }
  return r;
}

inline std::vector<SignLogProb> batch_results_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("results") || !j["results"].is_array()) {
    throw Error(ErrorCode::kProtocolViolation, "batch response lacks 'results'");
  }
  std::vector<SignLogProb> out;
  for (const auto& item : j["results"]) out.push_back(sign_result_from_json(item));
  return out;
}

}  // namespace claimscope::protocol

#endif  // CLAIMSCOPE_PROTOCOL_HPP
