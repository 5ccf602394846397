#include "qot/types.hpp"

#include <stdexcept>

namespace qot {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Qot: return "qot";
    case Strategy::Cot: return "cot";
    case Strategy::NoQot: return "noqot";
  }
  return "qot";
}

std::optional<Strategy> strategy_from_string(std::string_view s) {
  if (s == "qot") return Strategy::Qot;
  if (s == "cot") return Strategy::Cot;
  if (s == "noqot") return Strategy::NoQot;
  return std::nullopt;
}

std::string to_string(DomainTag t) {
  switch (t) {
    case DomainTag::ApiDesign: return "api_design";
    case DomainTag::DataCommunication: return "data_communication";
    case DomainTag::FileSystems: return "file_systems";
    case DomainTag::Custom: return "custom";
  }
  return "custom";
}

DomainTag domain_tag_from_string(std::string_view s) {
  if (s == "api_design") return DomainTag::ApiDesign;
  if (s == "data_communication") return DomainTag::DataCommunication;
  if (s == "file_systems") return DomainTag::FileSystems;
  return DomainTag::Custom;
}

std::string to_string(Stage s) {
  switch (s) {
    case Stage::StepGeneration: return "step_generation";
    case Stage::QuestionGeneration: return "question_generation";
    case Stage::AnswerGeneration: return "answer_generation";
    case Stage::Synthesis: return "synthesis";
    case Stage::ProviderTransport: return "provider_transport";
    case Stage::Parse: return "parse";
  }
  return "provider_transport";
}

std::optional<Stage> stage_from_string(std::string_view s) {
  if (s == "step_generation") return Stage::StepGeneration;
  if (s == "question_generation") return Stage::QuestionGeneration;
  if (s == "answer_generation") return Stage::AnswerGeneration;
  if (s == "synthesis") return Stage::Synthesis;
  if (s == "provider_transport") return Stage::ProviderTransport;
  if (s == "parse") return Stage::Parse;
  return std::nullopt;
}

std::string to_string(Role r) {
  switch (r) {
    case Role::System: return "system";
    case Role::User: return "user";
    case Role::Assistant: return "assistant";
  }
  return "user";
}

Role role_from_string(std::string_view s) {
  if (s == "system") return Role::System;
  if (s == "assistant") return Role::Assistant;
  if (s == "user") return Role::User;
  throw std::invalid_argument("unknown chat role: " + std::string(s));
}

std::string to_string(FinishReason r) {
  switch (r) {
    case FinishReason::Stop: return "stop";
    case FinishReason::Length: return "length";
    case FinishReason::Error: return "error";
  }
  return "stop";
}

FinishReason finish_reason_from_string(std::string_view s) {
  if (s == "length") return FinishReason::Length;
  if (s == "error") return FinishReason::Error;
  return FinishReason::Stop;
}

std::string ChatRequest::joined_text() const {
  std::string out;
  for (const auto& m : messages) {
    if (!out.empty()) out += "\n";
    out += m.content;
  }
  return out;
}

bool RunRecord::operator==(const RunRecord& other) const {
  // metadata (timestamps etc.) is deliberately not compared
  return run_id == other.run_id && strategy == other.strategy &&
         model_name == other.model_name && task_id == other.task_id &&
         repetition_index == other.repetition_index && seed == other.seed &&
         transcript == other.transcript && plan == other.plan &&
         qa_chains == other.qa_chains && thinking_process == other.thinking_process &&
         solution == other.solution && error == other.error &&
         provider_call_count == other.provider_call_count;
}

bool RubricScore::valid() const {
  auto in_range = [](int d) { return d >= 1 && d <= 4; };
  return in_range(scalability) && in_range(completeness) && in_range(modularity) &&
         in_range(security);
}

}  // namespace qot
