#include "qot/json_io.hpp"

#include <fstream>

#include "qot/errors.hpp"

namespace qot {

using nlohmann::json;

void to_json(json& j, const Objective& v) {
  j = json{{"id", v.id}, {"text", v.text}, {"domain_tag", to_string(v.domain_tag)}};
}

void from_json(const json& j, Objective& v) {
  j.at("id").get_to(v.id);
  j.at("text").get_to(v.text);
  v.domain_tag = domain_tag_from_string(j.at("domain_tag").get<std::string>());
}

void to_json(json& j, const Step& v) {
  j = json{{"index", v.index}, {"title", v.title}, {"description", v.description}};
}

void from_json(const json& j, Step& v) {
  j.at("index").get_to(v.index);
  j.at("title").get_to(v.title);
  j.at("description").get_to(v.description);
}

void to_json(json& j, const StepPlan& v) {
  j = json{{"objective_id", v.objective_id}, {"steps", v.steps}};
}

void from_json(const json& j, StepPlan& v) {
  j.at("objective_id").get_to(v.objective_id);
  j.at("steps").get_to(v.steps);
}

void to_json(json& j, const QaItem& v) {
  j = json{{"step_index", v.step_index},
           {"question_index", v.question_index},
           {"question", v.question},
           {"answer", v.answer}};
}

void from_json(const json& j, QaItem& v) {
  j.at("step_index").get_to(v.step_index);
  j.at("question_index").get_to(v.question_index);
  j.at("question").get_to(v.question);
  j.at("answer").get_to(v.answer);
}

void to_json(json& j, const QaChain& v) {
  j = json{{"step_index", v.step_index}, {"items", v.items}};
}

void from_json(const json& j, QaChain& v) {
  j.at("step_index").get_to(v.step_index);
  j.at("items").get_to(v.items);
}

void to_json(json& j, const ThinkingProcess& v) { j = json{{"entries", v.entries}}; }

void from_json(const json& j, ThinkingProcess& v) { j.at("entries").get_to(v.entries); }

void to_json(json& j, const CodeArtifact& v) {
  j = json{{"filename", v.filename}, {"content", v.content}};
}

void from_json(const json& j, CodeArtifact& v) {
  j.at("filename").get_to(v.filename);
  j.at("content").get_to(v.content);
}

void to_json(json& j, const FinalSolution& v) {
  j = json{{"text", v.text}, {"extracted_artifacts", v.extracted_artifacts}};
}

void from_json(const json& j, FinalSolution& v) {
  j.at("text").get_to(v.text);
  j.at("extracted_artifacts").get_to(v.extracted_artifacts);
}

void to_json(json& j, const StructuredError& v) {
  j = json{{"stage", to_string(v.stage)},
           {"step_index", v.step_index},
           {"question_index", v.question_index},
           {"message", v.message},
           {"retryable", v.retryable}};
}

void from_json(const json& j, StructuredError& v) {
  auto stage = stage_from_string(j.at("stage").get<std::string>());
  if (!stage) throw QotError("unknown error stage: " + j.at("stage").get<std::string>());
  v.stage = *stage;
  j.at("step_index").get_to(v.step_index);
  j.at("question_index").get_to(v.question_index);
  j.at("message").get_to(v.message);
  j.at("retryable").get_to(v.retryable);
}

void to_json(json& j, const ChatMessage& v) {
  j = json{{"role", to_string(v.role)}, {"content", v.content}};
}

void from_json(const json& j, ChatMessage& v) {
  v.role = role_from_string(j.at("role").get<std::string>());
  j.at("content").get_to(v.content);
}

void to_json(json& j, const ChatRequest& v) {
  j = json{{"messages", v.messages},
           {"model_name", v.model_name},
           {"temperature", v.temperature},
           {"max_tokens", v.max_tokens},
           {"seed", v.seed}};
}

void from_json(const json& j, ChatRequest& v) {
  j.at("messages").get_to(v.messages);
  j.at("model_name").get_to(v.model_name);
  j.at("temperature").get_to(v.temperature);
  j.at("max_tokens").get_to(v.max_tokens);
  j.at("seed").get_to(v.seed);
}

void to_json(json& j, const TokenUsage& v) {
  j = json{{"prompt_tokens", v.prompt_tokens}, {"completion_tokens", v.completion_tokens}};
}

void from_json(const json& j, TokenUsage& v) {
  j.at("prompt_tokens").get_to(v.prompt_tokens);
  j.at("completion_tokens").get_to(v.completion_tokens);
}

void to_json(json& j, const ChatResponse& v) {
  j = json{{"content", v.content},
           {"finish_reason", to_string(v.finish_reason)},
           {"usage", v.usage}};
}

void from_json(const json& j, ChatResponse& v) {
  j.at("content").get_to(v.content);
  v.finish_reason = finish_reason_from_string(j.at("finish_reason").get<std::string>());
  j.at("usage").get_to(v.usage);
}

void to_json(json& j, const TranscriptEntry& v) {
  j = json{{"prompt", v.prompt},
           {"completion", v.completion},
           {"finish_reason", to_string(v.finish_reason)},
           {"attempts", v.attempts},
           {"usage", v.usage},
           {"error", v.error}};
}

void from_json(const json& j, TranscriptEntry& v) {
  j.at("prompt").get_to(v.prompt);
  j.at("completion").get_to(v.completion);
  v.finish_reason = finish_reason_from_string(j.at("finish_reason").get<std::string>());
  j.at("attempts").get_to(v.attempts);
  j.at("usage").get_to(v.usage);
  j.at("error").get_to(v.error);
}

void to_json(json& j, const RunRecord& v) {
  j = json{{"schema", kRunSchemaVersion},
           {"run_id", v.run_id},
           {"strategy", to_string(v.strategy)},
           {"model_name", v.model_name},
           {"task_id", v.task_id},
           {"repetition_index", v.repetition_index},
           {"seed", v.seed},
           {"transcript", v.transcript},
           {"plan", v.plan},
           {"qa_chains", v.qa_chains},
           {"thinking_process", v.thinking_process},
           {"solution", v.solution},
           {"outcome", v.succeeded() ? json{{"status", "success"}}
                                     : json{{"status", "error"}, {"error", *v.error}}},
           {"provider_call_count", v.provider_call_count},
           {"metadata", v.metadata}};
}

void from_json(const json& j, RunRecord& v) {
  const std::string schema = j.at("schema").get<std::string>();
  if (schema != kRunSchemaVersion) {
    throw QotError("unsupported run schema: " + schema);
  }
  j.at("run_id").get_to(v.run_id);
  auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
  if (!strategy) throw QotError("unknown strategy: " + j.at("strategy").get<std::string>());
  v.strategy = *strategy;
  j.at("model_name").get_to(v.model_name);
  j.at("task_id").get_to(v.task_id);
  j.at("repetition_index").get_to(v.repetition_index);
  j.at("seed").get_to(v.seed);
  j.at("transcript").get_to(v.transcript);
  j.at("plan").get_to(v.plan);
  j.at("qa_chains").get_to(v.qa_chains);
  j.at("thinking_process").get_to(v.thinking_process);
  j.at("solution").get_to(v.solution);
  const json& outcome = j.at("outcome");
  if (outcome.at("status").get<std::string>() == "success") {
    v.error = std::nullopt;
  } else {
    v.error = outcome.at("error").get<StructuredError>();
  }
  j.at("provider_call_count").get_to(v.provider_call_count);
  j.at("metadata").get_to(v.metadata);
}

void to_json(json& j, const RubricScore& v) {
  j = json{{"scalability", v.scalability},
           {"completeness", v.completeness},
           {"modularity", v.modularity},
           {"security", v.security},
           {"total", v.total()}};
}

void from_json(const json& j, RubricScore& v) {
  j.at("scalability").get_to(v.scalability);
  j.at("completeness").get_to(v.completeness);
  j.at("modularity").get_to(v.modularity);
  j.at("security").get_to(v.security);
}

void to_json(json& j, const CostEstimate& v) {
  j = json{{"step_count", v.step_count},
           {"questions_per_step", v.questions_per_step},
           {"uniform_questions", v.uniform_questions},
           {"unit_cost", v.unit_cost},
           {"total_calls", v.total_calls},
           {"total_cost", v.total_cost}};
}

void from_json(const json& j, CostEstimate& v) {
  j.at("step_count").get_to(v.step_count);
  j.at("questions_per_step").get_to(v.questions_per_step);
  j.at("uniform_questions").get_to(v.uniform_questions);
  j.at("unit_cost").get_to(v.unit_cost);
  j.at("total_calls").get_to(v.total_calls);
  j.at("total_cost").get_to(v.total_cost);
}

void save_run_record(const std::filesystem::path& path, const RunRecord& record) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw QotError("cannot write run record: " + path.string());
  out << json(record).dump(2) << "\n";
}

RunRecord load_run_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw QotError("cannot read run record: " + path.string());
  json j = json::parse(in);
  return j.get<RunRecord>();
}

}  // namespace qot
