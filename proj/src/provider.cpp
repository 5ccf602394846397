#include "qot/provider.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace qot {

std::string to_string(ProviderErrorKind k) {
  switch (k) {
    case ProviderErrorKind::Timeout: return "timeout";
    case ProviderErrorKind::RateLimited: return "rate_limited";
    case ProviderErrorKind::MalformedResponse: return "malformed_response";
    case ProviderErrorKind::ConnectionFailed: return "connection_failed";
    case ProviderErrorKind::AuthFailed: return "auth_failed";
  }
  return "connection_failed";
}

std::optional<ProviderErrorKind> provider_error_kind_from_string(std::string_view s) {
  if (s == "timeout") return ProviderErrorKind::Timeout;
  if (s == "rate_limited") return ProviderErrorKind::RateLimited;
  if (s == "malformed_response") return ProviderErrorKind::MalformedResponse;
  if (s == "connection_failed") return ProviderErrorKind::ConnectionFailed;
  if (s == "auth_failed") return ProviderErrorKind::AuthFailed;
  return std::nullopt;
}

Completion complete(Provider& provider, const ChatRequest& request,
                    const RetryPolicy& policy) {
  if (request.messages.empty()) {
    throw std::invalid_argument("chat request has no messages");
  }
  if (request.messages.back().role != Role::User) {
    throw std::invalid_argument("chat request must end with a user message");
  }

  const int max_attempts = policy.max_attempts < 1 ? 1 : policy.max_attempts;
  ProviderError last{};
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    auto result = provider.complete_once(request);
    if (result.ok()) {
      return Completion{std::move(result).value(), attempt};
    }
    last = result.error();
    if (!last.retryable() || attempt == max_attempts) {
      StructuredError err;
      err.stage = Stage::ProviderTransport;
      err.message = to_string(last.kind) + ": " + last.message;
      err.retryable = last.retryable();
      return Completion{std::move(err), attempt};
    }
    auto delay = last.retry_after.value_or(std::chrono::milliseconds(
        static_cast<long long>(static_cast<double>(policy.backoff_base.count()) *
                               std::pow(policy.backoff_multiplier, attempt - 1))));
    if (delay.count() > 0) std::this_thread::sleep_for(delay);
  }
  // unreachable: the loop always returns
  StructuredError err;
  err.stage = Stage::ProviderTransport;
  err.message = "retry loop exhausted";
  return Completion{std::move(err), max_attempts};
}

}  // namespace qot
