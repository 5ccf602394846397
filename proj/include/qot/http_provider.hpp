#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "qot/provider.hpp"

namespace qot {

/// OpenAI-compatible chat-completions endpoint: POST /v1/chat/completions
/// with a bearer token. base_url is the server origin, e.g.
/// "http://localhost:8000".
struct HttpProviderConfig {
  std::string base_url;
  std::string api_key;  // resolved from the environment by the config layer
  std::chrono::seconds timeout{120};
};

class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);

  Result<ChatResponse, ProviderError> complete_once(const ChatRequest& request) override;
  std::string name() const override;

  /// Process-wide count of underlying HTTP attempts, for tests that assert
  /// offline modes make none.
  static std::uint64_t total_attempts();

 private:
  HttpProviderConfig config_;
};

}  // namespace qot
