#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qot {

enum class Strategy { Qot, Cot, NoQot };

std::string to_string(Strategy s);
std::optional<Strategy> strategy_from_string(std::string_view s);

enum class DomainTag { ApiDesign, DataCommunication, FileSystems, Custom };

std::string to_string(DomainTag t);
DomainTag domain_tag_from_string(std::string_view s);

/// The user-level problem statement a run tries to solve.
struct Objective {
  std::string id;
  std::string text;
  DomainTag domain_tag = DomainTag::Custom;

  bool operator==(const Objective&) const = default;
};

struct Step {
  int index = 0;  // 1-based
  std::string title;
  std::string description;

  bool operator==(const Step&) const = default;
};

/// Ordered decomposition of an objective. Step indices are exactly 1..n.
struct StepPlan {
  std::string objective_id;
  std::vector<Step> steps;

  bool operator==(const StepPlan&) const = default;
};

struct QaItem {
  int step_index = 0;
  int question_index = 0;  // 1-based within the step
  std::string question;
  std::optional<std::string> answer;

  bool operator==(const QaItem&) const = default;
};

/// Self-questioning chain for one step.
struct QaChain {
  int step_index = 0;
  std::vector<QaItem> items;

  bool operator==(const QaChain&) const = default;
};

/// Append-only store of answered QA items, in (step_index, question_index)
/// order for a well-formed run.
struct ThinkingProcess {
  std::vector<QaItem> entries;

  bool operator==(const ThinkingProcess&) const = default;
};

struct CodeArtifact {
  std::string filename;
  std::string content;

  bool operator==(const CodeArtifact&) const = default;
};

struct FinalSolution {
  std::string text;
  std::vector<CodeArtifact> extracted_artifacts;

  bool operator==(const FinalSolution&) const = default;
};

enum class Stage {
  StepGeneration,
  QuestionGeneration,
  AnswerGeneration,
  Synthesis,
  ProviderTransport,
  Parse,
};

std::string to_string(Stage s);
std::optional<Stage> stage_from_string(std::string_view s);

/// Terminal error of a reasoning branch. step_index is set only for the
/// question/answer stages, question_index only for the answer stage.
struct StructuredError {
  Stage stage = Stage::ProviderTransport;
  std::optional<int> step_index;
  std::optional<int> question_index;
  std::string message;
  bool retryable = false;

  bool operator==(const StructuredError&) const = default;
};

enum class Role { System, User, Assistant };

std::string to_string(Role r);
Role role_from_string(std::string_view s);

struct ChatMessage {
  Role role = Role::User;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  std::string model_name;
  double temperature = 0.7;
  std::optional<int> max_tokens;
  std::optional<long long> seed;

  bool operator==(const ChatRequest&) const = default;

  /// All message bodies joined, for log inspection and hint matching.
  std::string joined_text() const;
};

enum class FinishReason { Stop, Length, Error };

std::string to_string(FinishReason r);
FinishReason finish_reason_from_string(std::string_view s);

struct TokenUsage {
  long long prompt_tokens = 0;
  long long completion_tokens = 0;

  bool operator==(const TokenUsage&) const = default;
};

struct ChatResponse {
  std::string content;
  FinishReason finish_reason = FinishReason::Stop;
  std::optional<TokenUsage> usage;

  bool operator==(const ChatResponse&) const = default;
};

/// One logical provider call as it happened, failed calls included.
struct TranscriptEntry {
  ChatRequest prompt;
  std::string completion;  // empty when the call failed
  FinishReason finish_reason = FinishReason::Stop;
  int attempts = 1;  // underlying attempts spent on this call
  std::optional<TokenUsage> usage;
  std::optional<std::string> error;

  bool operator==(const TranscriptEntry&) const = default;
};

/// Everything one strategy x model x task execution produced.
///
/// `metadata` carries timestamps and other incidental data; it is excluded
/// from equality so replayed runs compare byte-stable.
struct RunRecord {
  std::string run_id;
  Strategy strategy = Strategy::Qot;
  std::string model_name;
  std::string task_id;
  int repetition_index = 1;
  long long seed = 0;
  std::vector<TranscriptEntry> transcript;
  std::optional<StepPlan> plan;
  std::optional<std::vector<QaChain>> qa_chains;
  std::optional<ThinkingProcess> thinking_process;
  std::optional<FinalSolution> solution;
  std::optional<StructuredError> error;  // nullopt means success
  int provider_call_count = 0;
  std::map<std::string, std::string> metadata;

  bool succeeded() const { return !error.has_value(); }
  bool operator==(const RunRecord& other) const;
};

/// Per-method rubric result. Each dimension is an integer in [1, 4].
struct RubricScore {
  int scalability = 0;
  int completeness = 0;
  int modularity = 0;
  int security = 0;

  int total() const { return scalability + completeness + modularity + security; }
  bool valid() const;

  bool operator==(const RubricScore&) const = default;
};

/// Call/cost projection for a run shape: 1 step-generation call, one
/// question-generation call per step, one answer call per question, plus one
/// synthesis call.
struct CostEstimate {
  int step_count = 0;
  std::vector<int> questions_per_step;         // expanded to one entry per step
  std::optional<int> uniform_questions;        // set when given as a scalar
  double unit_cost = 0.0;
  int total_calls = 0;
  double total_cost = 0.0;

  bool operator==(const CostEstimate&) const = default;
};

}  // namespace qot
