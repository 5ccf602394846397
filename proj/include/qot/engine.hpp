#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qot/provider.hpp"
#include "qot/templates.hpp"
#include "qot/types.hpp"

namespace qot {

struct StrategyConfig {
  Strategy strategy = Strategy::Qot;
  std::string model_name;
  double temperature = 0.7;
  RetryPolicy retry;
  // Runaway model verbosity becomes a CapExceeded error instead of unbounded cost.
  int max_steps_cap = 20;
  int max_questions_per_step_cap = 15;
};

/// Identity fields the experiment driver assigns to a run.
struct RunContext {
  std::string run_id;
  int repetition_index = 1;
  long long seed = 0;
};

/// Executes the full question-driven pipeline: plan generation, per-step
/// question generation, per-question answers accumulated into the thinking
/// process, then one synthesis call. Any stage failure (after retries) ends
/// the run with a StructuredError naming the stage and indices; the partial
/// transcript and thinking process are preserved in the record.
RunRecord run_qot(const Objective& objective, const StrategyConfig& config,
                  Provider& provider, const TemplateRegistry& templates,
                  const RunContext& ctx = {});

/// Single-call baselines: noqot sends the task statement alone, cot adds an
/// explicit step-by-step reasoning instruction.
RunRecord run_single_pass(const Objective& objective, const StrategyConfig& config,
                          Provider& provider, const TemplateRegistry& templates,
                          const RunContext& ctx = {});

/// Questions per step: a uniform count or an explicit per-step list.
struct PlanShape {
  int steps = 1;
  std::variant<int, std::vector<int>> questions = 1;
};

/// Projects call count and cost for a run shape at the given per-call weight.
/// Throws InvalidShape on non-positive inputs.
CostEstimate estimate_cost(const PlanShape& shape, double unit_cost);

/// Formatted thinking-process transcript: step headers followed by Q/A pairs.
/// This is the carrier bound into answer and synthesis prompts.
std::string format_tp_transcript(const std::optional<StepPlan>& plan,
                                 const ThinkingProcess& tp);

}  // namespace qot
