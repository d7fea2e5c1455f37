#ifndef CLAIMSCOPE_MOCK_BACKEND_HPP
#define CLAIMSCOPE_MOCK_BACKEND_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "claimscope/corpus.hpp"
#include "claimscope/models.hpp"
#include "claimscope/protocol.hpp"

namespace claimscope {

// FNV-1a over the sign bytes, a 0x1f separator, then prefix_length as 8
// little-endian bytes.
inline std::uint64_t mock_hash(std::string_view sign, std::uint64_t prefix_length) {
  std::string bytes(sign);
  bytes.push_back('\x1f');
  for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<char>((prefix_length >> (8 * i)) & 0xff));
  return fnv1a64(bytes);
}

// Deterministic stand-in: always in [-7.995, -3].
inline double mock_logprob(std::string_view sign, std::uint64_t prefix_length) {
  return -(3.0 + static_cast<double>(mock_hash(sign, prefix_length) % 1000) / 200.0);
}

// The mock formula without a network hop.
class MockLlmBackend : public LlmBackend {
 public:
  std::vector<SignLogProb> batch_logprobs(const std::vector<std::string>& signs) override {
    ++calls_;
    std::vector<SignLogProb> out;
    for (std::size_t i = 1; i < signs.size(); ++i) out.push_back({mock_logprob(signs[i], i)});
    return out;
  }
  std::size_t calls() const { return calls_; }

 private:
  std::size_t calls_ = 0;
};

// HTTP server for the backend protocol, answering with mock_logprob.
class MockServer {
 public:
  static constexpr const char* kModelName = "mock-fnv1a";

  MockServer() {
    // No SO_REUSEPORT: a second server on a taken port must fail to bind.
    server_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes),
                 sizeof(yes));
    });
    server_.Get(protocol::kHealthPath, [](const httplib::Request&, httplib::Response& res) {
      nlohmann::json j = {{"protocol", protocol::kVersion}, {"model", kModelName}};
      res.set_content(j.dump(), "application/json");
    });
    server_.Post(protocol::kSignPath, [](const httplib::Request& req, httplib::Response& res) {
      handle(req, res, [](const nlohmann::json& body) {
        auto prefix = body.at("prefix_signs").get<std::vector<std::string>>();
        auto candidate = body.at("candidate_sign").get<std::string>();
        if (prefix.empty()) throw std::invalid_argument("prefix_signs must not be empty");
        if (candidate.empty()) throw std::invalid_argument("candidate_sign must not be empty");
        return protocol::to_json(SignLogProb{mock_logprob(candidate, prefix.size())});
      });
    });
    server_.Post(protocol::kBatchPath, [](const httplib::Request& req, httplib::Response& res) {
      handle(req, res, [](const nlohmann::json& body) {
        auto signs = body.at("signs").get<std::vector<std::string>>();
        if (signs.size() < 2) throw std::invalid_argument("signs needs at least two entries");
        nlohmann::json results = nlohmann::json::array();
        for (std::size_t i = 1; i < signs.size(); ++i) {
          if (signs[i].empty()) throw std::invalid_argument("empty sign");
          results.push_back(protocol::to_json(SignLogProb{mock_logprob(signs[i], i)}));
        }
        return nlohmann::json{{"results", results}};
      });
    });
  }

  ~MockServer() { stop(); }
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  // Returns false when the port is taken. Port 0 picks a free port.
  bool bind(const std::string& host, int port) {
    if (port == 0) {
      port_ = server_.bind_to_any_port(host);
      return port_ > 0;
    }
    if (!server_.bind_to_port(host, port)) return false;
    port_ = port;
    return true;
  }

  int port() const { return port_; }

  // Blocks until stop().
  void serve() { server_.listen_after_bind(); }

  void start() {
    thread_ = std::thread([this] { serve(); });
    server_.wait_until_ready();
  }

  void stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

 private:
  template <typename Fn>
  static void handle(const httplib::Request& req, httplib::Response& res, Fn fn) {
    try {
      res.set_content(fn(nlohmann::json::parse(req.body)).dump(), "application/json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
    }
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
};

}  // namespace claimscope

#endif  // CLAIMSCOPE_MOCK_BACKEND_HPP
