#include "qot/http_provider.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace qot {

namespace {

std::atomic<std::uint64_t> g_http_attempts{0};

using nlohmann::json;

json request_body(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) {
    messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  json body = {{"model", request.model_name},
               {"messages", std::move(messages)},
               {"temperature", request.temperature}};
  if (request.max_tokens) body["max_tokens"] = *request.max_tokens;
  if (request.seed) body["seed"] = *request.seed;
  return body;
}

std::optional<std::chrono::milliseconds> parse_retry_after(const httplib::Response& res) {
  if (!res.has_header("Retry-After")) return std::nullopt;
  const std::string value = res.get_header_value("Retry-After");
  if (value.empty() || !std::isdigit(static_cast<unsigned char>(value[0]))) {
    return std::nullopt;
  }
  return std::chrono::milliseconds(std::strtoll(value.c_str(), nullptr, 10) * 1000);
}

ProviderError make_error(ProviderErrorKind kind, std::string message) {
  ProviderError e;
  e.kind = kind;
  e.message = std::move(message);
  return e;
}

}  // namespace

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {}

std::string HttpProvider::name() const { return "http:" + config_.base_url; }

std::uint64_t HttpProvider::total_attempts() { return g_http_attempts.load(); }

Result<ChatResponse, ProviderError> HttpProvider::complete_once(
    const ChatRequest& request) {
  g_http_attempts.fetch_add(1);

  // a client per call keeps concurrent complete_once calls independent
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }

  auto res = client.Post("/v1/chat/completions", headers, request_body(request).dump(),
                         "application/json");
  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
        err == httplib::Error::Write) {
      return make_error(ProviderErrorKind::Timeout,
                        "request timed out: " + httplib::to_string(err));
    }
    return make_error(ProviderErrorKind::ConnectionFailed,
                      "connection failed: " + httplib::to_string(err));
  }

  if (res->status == 401 || res->status == 403) {
    return make_error(ProviderErrorKind::AuthFailed,
                      "authentication rejected (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status == 429) {
    auto e = make_error(ProviderErrorKind::RateLimited, "rate limited (HTTP 429)");
    e.retry_after = parse_retry_after(*res);
    return e;
  }
  if (res->status == 408 || res->status == 504) {
    return make_error(ProviderErrorKind::Timeout,
                      "server timeout (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status >= 500) {
    return make_error(ProviderErrorKind::ConnectionFailed,
                      "server error (HTTP " + std::to_string(res->status) + ")");
  }
  if (res->status != 200) {
    return make_error(ProviderErrorKind::MalformedResponse,
                      "unexpected HTTP status " + std::to_string(res->status) + ": " +
                          res->body.substr(0, 300));
  }

  json body = json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.contains("choices") || !body["choices"].is_array() ||
      body["choices"].empty()) {
    return make_error(ProviderErrorKind::MalformedResponse,
                      "response body is not a chat completion: " + res->body.substr(0, 300));
  }
  const json& choice = body["choices"][0];
  if (!choice.contains("message") || !choice["message"].contains("content")) {
    return make_error(ProviderErrorKind::MalformedResponse,
                      "choice carries no message content");
  }

  ChatResponse response;
  response.content = choice["message"]["content"].is_null()
                         ? ""
                         : choice["message"]["content"].get<std::string>();
  response.finish_reason =
      finish_reason_from_string(choice.value("finish_reason", "stop"));
  if (body.contains("usage") && body["usage"].is_object()) {
    TokenUsage usage;
    usage.prompt_tokens = body["usage"].value("prompt_tokens", 0LL);
    usage.completion_tokens = body["usage"].value("completion_tokens", 0LL);
    response.usage = usage;
  }
  return response;
}

}  // namespace qot
