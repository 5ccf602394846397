#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "qot/result.hpp"
#include "qot/types.hpp"

namespace qot {

enum class ProviderErrorKind {
  Timeout,
  RateLimited,
  MalformedResponse,
  ConnectionFailed,
  AuthFailed,
};

std::string to_string(ProviderErrorKind k);
std::optional<ProviderErrorKind> provider_error_kind_from_string(std::string_view s);

struct ProviderError {
  ProviderErrorKind kind = ProviderErrorKind::ConnectionFailed;
  std::string message;
  /// Server-supplied backoff hint, honored by the retry loop when present.
  std::optional<std::chrono::milliseconds> retry_after;

  bool retryable() const { return kind != ProviderErrorKind::AuthFailed; }
};

/// One chat-completion backend. Implementations must accept concurrent
/// in-flight calls.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual Result<ChatResponse, ProviderError> complete_once(const ChatRequest& request) = 0;
  virtual std::string name() const = 0;
};

/// max_attempts = 1 reproduces terminate-on-error behavior: a single failed
/// attempt ends the reasoning branch.
struct RetryPolicy {
  int max_attempts = 1;
  std::chrono::milliseconds backoff_base{500};
  double backoff_multiplier = 2.0;
};

struct Completion {
  Result<ChatResponse, StructuredError> result;  // error stage is ProviderTransport
  int attempts = 0;

  bool ok() const { return result.ok(); }
};

/// Runs `request` against `provider` under `policy`. Retries retryable
/// failures up to max_attempts, sleeping backoff_base * multiplier^(attempt-1)
/// between attempts (or the server's retry-after hint when given). Exhaustion
/// yields a ProviderTransport error carrying the last underlying cause.
Completion complete(Provider& provider, const ChatRequest& request, const RetryPolicy& policy);

}  // namespace qot
