#ifndef CLAIMSCOPE_HTTP_BACKEND_HPP
#define CLAIMSCOPE_HTTP_BACKEND_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "claimscope/error.hpp"
#include "claimscope/models.hpp"
#include "claimscope/protocol.hpp"

namespace claimscope {

// LlmBackend speaking the JSON protocol over plain HTTP.
class HttpLlmBackend : public LlmBackend {
 public:
  // `url` is "http://host:port".
  explicit HttpLlmBackend(std::string url, int timeout_seconds = 30) : url_(std::move(url)) {
    while (!url_.empty() && url_.back() == '/') url_.pop_back();
    if (url_.rfind("http://", 0) != 0 || url_.size() <= 7 ||
        url_.find('/', 7) != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "backend URL must look like http://host:port");
    }
    client_ = std::make_unique<httplib::Client>(url_);
    client_->set_connection_timeout(timeout_seconds);
    client_->set_read_timeout(timeout_seconds);
    client_->set_write_timeout(timeout_seconds);
  }

  const std::string& url() const { return url_; }

  nlohmann::json health() { return get(protocol::kHealthPath); }

  SignLogProb sign_logprob(const std::vector<std::string>& prefix_signs,
                           const std::string& candidate_sign) {
    nlohmann::json body = {{"prefix_signs", prefix_signs}, {"candidate_sign", candidate_sign}};
    return protocol::sign_result_from_json(post(protocol::kSignPath, body));
  }

  std::vector<SignLogProb> batch_logprobs(const std::vector<std::string>& signs) override {
    if (signs.size() < 2) return {};
    nlohmann::json body = {{"signs", signs}};
    auto results = protocol::batch_results_from_json(post(protocol::kBatchPath, body));
    if (results.size() != signs.size() - 1) {
      throw Error(ErrorCode::kProtocolViolation,
                  "expected " + std::to_string(signs.size() - 1) + " results, got " +
                      std::to_string(results.size()));
    }
    return results;
  }

 private:
  nlohmann::json get(const char* path) { return parse(client_->Get(path), path); }

  nlohmann::json post(const char* path, const nlohmann::json& body) {
    return parse(client_->Post(path, body.dump(), "application/json"), path);
  }

  nlohmann::json parse(const httplib::Result& res, const char* path) {
    if (!res) {
      throw Error(ErrorCode::kBackendUnavailable,
                  url_ + path + ": " + httplib::to_string(res.error()));
    }
    if (res->status >= 500) {
      throw Error(ErrorCode::kBackendUnavailable,
                  url_ + path + " answered HTTP " + std::to_string(res->status));
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kProtocolViolation,
                  url_ + path + " answered HTTP " + std::to_string(res->status) + ": " +
                      res->body);
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::kProtocolViolation, url_ + path + " returned invalid JSON");
    }
  }

  std::string url_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace claimscope

#endif  // CLAIMSCOPE_HTTP_BACKEND_HPP
