#pragma once

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "qot/types.hpp"

// nullopt maps to JSON null in both directions.
namespace nlohmann {
template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& opt) {
    if (opt.has_value()) {
      j = *opt;
    } else {
      j = nullptr;
    }
  }
  static void from_json(const json& j, std::optional<T>& opt) {
    if (j.is_null()) {
      opt = std::nullopt;
    } else {
      opt = j.get<T>();
    }
  }
};
}  // namespace nlohmann

namespace qot {

inline constexpr const char* kRunSchemaVersion = "qot-run/1";

void to_json(nlohmann::json& j, const Objective& v);
void from_json(const nlohmann::json& j, Objective& v);
void to_json(nlohmann::json& j, const Step& v);
void from_json(const nlohmann::json& j, Step& v);
void to_json(nlohmann::json& j, const StepPlan& v);
void from_json(const nlohmann::json& j, StepPlan& v);
void to_json(nlohmann::json& j, const QaItem& v);
void from_json(const nlohmann::json& j, QaItem& v);
void to_json(nlohmann::json& j, const QaChain& v);
void from_json(const nlohmann::json& j, QaChain& v);
void to_json(nlohmann::json& j, const ThinkingProcess& v);
void from_json(const nlohmann::json& j, ThinkingProcess& v);
void to_json(nlohmann::json& j, const CodeArtifact& v);
void from_json(const nlohmann::json& j, CodeArtifact& v);
void to_json(nlohmann::json& j, const FinalSolution& v);
void from_json(const nlohmann::json& j, FinalSolution& v);
void to_json(nlohmann::json& j, const StructuredError& v);
void from_json(const nlohmann::json& j, StructuredError& v);
void to_json(nlohmann::json& j, const ChatMessage& v);
void from_json(const nlohmann::json& j, ChatMessage& v);
void to_json(nlohmann::json& j, const ChatRequest& v);
void from_json(const nlohmann::json& j, ChatRequest& v);
void to_json(nlohmann::json& j, const TokenUsage& v);
void from_json(const nlohmann::json& j, TokenUsage& v);
void to_json(nlohmann::json& j, const ChatResponse& v);
void from_json(const nlohmann::json& j, ChatResponse& v);
void to_json(nlohmann::json& j, const TranscriptEntry& v);
void from_json(const nlohmann::json& j, TranscriptEntry& v);
void to_json(nlohmann::json& j, const RunRecord& v);
void from_json(const nlohmann::json& j, RunRecord& v);
void to_json(nlohmann::json& j, const RubricScore& v);
void from_json(const nlohmann::json& j, RubricScore& v);
void to_json(nlohmann::json& j, const CostEstimate& v);
void from_json(const nlohmann::json& j, CostEstimate& v);

/// One JSON document per run, schema "qot-run/1", snake_case field names.
void save_run_record(const std::filesystem::path& path, const RunRecord& record);
RunRecord load_run_record(const std::filesystem::path& path);

}  // namespace qot
