#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qot/provider.hpp"

namespace qot {

/// One canned reply or canned failure; `hint`, when non-empty, must appear in
/// the request text or the provider throws ScriptMismatch.
struct ScriptEntry {
  std::string hint;
  std::optional<std::string> content;
  std::optional<ProviderError> failure;

  static ScriptEntry reply(std::string text, std::string hint = "");
  static ScriptEntry fail(ProviderError error, std::string hint = "");
};

/// Deterministic test backend: serves entries strictly in script order and
/// records every request verbatim. Calling past the end of the script throws
/// ScriptExhausted (unless constructed with cycle=true, used by dry-run
/// fixtures that must serve an open-ended number of identical calls).
class ScriptedProvider : public Provider {
 public:
  explicit ScriptedProvider(std::vector<ScriptEntry> script,
                            std::string name = "scripted", bool cycle = false);

  Result<ChatResponse, ProviderError> complete_once(const ChatRequest& request) override;
  std::string name() const override { return name_; }

  std::vector<ChatRequest> call_log() const;
  std::size_t calls_made() const;

 private:
  mutable std::mutex mu_;
  std::vector<ScriptEntry> script_;
  std::vector<ChatRequest> log_;
  std::size_t next_ = 0;
  std::string name_;
  bool cycle_ = false;
};

}  // namespace qot
