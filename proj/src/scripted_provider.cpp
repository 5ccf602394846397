#include "qot/scripted_provider.hpp"

#include "qot/errors.hpp"

namespace qot {

ScriptEntry ScriptEntry::reply(std::string text, std::string hint) {
  ScriptEntry e;
  e.hint = std::move(hint);
  e.content = std::move(text);
  return e;
}

ScriptEntry ScriptEntry::fail(ProviderError error, std::string hint) {
  ScriptEntry e;
  e.hint = std::move(hint);
  e.failure = std::move(error);
  return e;
}

ScriptedProvider::ScriptedProvider(std::vector<ScriptEntry> script, std::string name,
                                   bool cycle)
    : script_(std::move(script)), name_(std::move(name)), cycle_(cycle) {}

Result<ChatResponse, ProviderError> ScriptedProvider::complete_once(
    const ChatRequest& request) {
  std::lock_guard<std::mutex> lock(mu_);
  log_.push_back(request);
  if (next_ >= script_.size()) {
    if (!cycle_ || script_.empty()) {
      throw ScriptExhausted("scripted provider '" + name_ + "' called " +
                            std::to_string(log_.size()) + " times, script has " +
                            std::to_string(script_.size()) + " entries");
    }
    next_ = 0;
  }
  const ScriptEntry& entry = script_[next_++];
  if (!entry.hint.empty() &&
      request.joined_text().find(entry.hint) == std::string::npos) {
    throw ScriptMismatch("scripted provider '" + name_ + "' entry " +
                         std::to_string(next_) + " expected hint '" + entry.hint +
                         "' in request");
  }
  if (entry.failure.has_value()) {
    return *entry.failure;
  }
  ChatResponse response;
  response.content = entry.content.value_or("");
  response.finish_reason = FinishReason::Stop;
  return response;
}

std::vector<ChatRequest> ScriptedProvider::call_log() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

std::size_t ScriptedProvider::calls_made() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_.size();
}

}  // namespace qot
