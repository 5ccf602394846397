#include "qot/engine.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "qot/errors.hpp"
#include "qot/parsers.hpp"

namespace qot {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunRecord make_record(const Objective& objective, const StrategyConfig& config,
                      const RunContext& ctx) {
  RunRecord rec;
  rec.strategy = config.strategy;
  rec.model_name = config.model_name;
  rec.task_id = objective.id;
  rec.repetition_index = ctx.repetition_index;
  rec.seed = ctx.seed;
  rec.run_id = !ctx.run_id.empty()
                   ? ctx.run_id
                   : to_string(config.strategy) + "-" + objective.id + "-rep" +
                         std::to_string(ctx.repetition_index);
  rec.metadata["started_at"] = utc_now();
  return rec;
}

void finish(RunRecord& rec, std::optional<StructuredError> error) {
  rec.error = std::move(error);
  rec.provider_call_count = static_cast<int>(rec.transcript.size());
  rec.metadata["finished_at"] = utc_now();
}

/// One logical provider call: runs the retry loop and appends the transcript
/// entry, failed calls included.
Completion call_and_record(RunRecord& rec, Provider& provider, const ChatRequest& request,
                           const RetryPolicy& policy) {
  Completion c = complete(provider, request, policy);
  TranscriptEntry entry;
  entry.prompt = request;
  entry.attempts = c.attempts;
  if (c.ok()) {
    entry.completion = c.result.value().content;
    entry.finish_reason = c.result.value().finish_reason;
    entry.usage = c.result.value().usage;
  } else {
    entry.finish_reason = FinishReason::Error;
    entry.error = c.result.error().message;
  }
  rec.transcript.push_back(std::move(entry));
  return c;
}

/// Pins a transport or parse failure to the pipeline stage where it happened,
/// so the error carries the indices the stage demands.
StructuredError staged(Stage stage, std::optional<int> step, std::optional<int> question,
                       std::string message, bool retryable = false) {
  StructuredError err;
  err.stage = stage;
  err.step_index = step;
  err.question_index = question;
  err.message = std::move(message);
  err.retryable = retryable;
  return err;
}

StructuredError restage(Stage stage, std::optional<int> step, std::optional<int> question,
                        const StructuredError& transport) {
  return staged(stage, step, question, transport.message, transport.retryable);
}

std::string plan_titles(const StepPlan& plan) {
  std::ostringstream os;
  for (const Step& s : plan.steps) {
    os << s.index << ". " << s.title << "\n";
  }
  return os.str();
}

}  // namespace

std::string format_tp_transcript(const std::optional<StepPlan>& plan,
                                 const ThinkingProcess& tp) {
  if (tp.entries.empty()) return "(no decisions recorded yet)";
  std::ostringstream os;
  int current_step = 0;
  for (const QaItem& item : tp.entries) {
    if (item.step_index != current_step) {
      current_step = item.step_index;
      std::string title;
      if (plan) {
        for (const Step& s : plan->steps) {
          if (s.index == current_step) title = s.title;
        }
      }
      os << "Step " << current_step;
      if (!title.empty()) os << ": " << title;
      os << "\n";
    }
    os << "  Q" << item.step_index << "." << item.question_index << ": " << item.question
       << "\n";
    os << "  A" << item.step_index << "." << item.question_index << ": "
       << item.answer.value_or("") << "\n";
  }
  return os.str();
}

RunRecord run_qot(const Objective& objective, const StrategyConfig& config,
                  Provider& provider, const TemplateRegistry& templates,
                  const RunContext& ctx) {
  RunRecord rec = make_record(objective, config, ctx);
  rec.thinking_process = ThinkingProcess{};

  const auto seed = std::optional<long long>(ctx.seed);

  // plan generation
  ChatRequest steps_req = render(templates.get(kTplQotSteps), {{"objective", objective.text}},
                                 config.model_name, config.temperature, seed);
  Completion steps_call = call_and_record(rec, provider, steps_req, config.retry);
  if (!steps_call.ok()) {
    finish(rec, restage(Stage::StepGeneration, std::nullopt, std::nullopt,
                        steps_call.result.error()));
    return rec;
  }
  auto parsed_plan = parse_steps(steps_call.result.value().content, objective.id);
  if (!parsed_plan.ok()) {
    finish(rec, staged(Stage::StepGeneration, std::nullopt, std::nullopt,
                       to_string(parsed_plan.error().kind) + ": " +
                           parsed_plan.error().message));
    return rec;
  }
  StepPlan plan = std::move(parsed_plan).value();
  if (static_cast<int>(plan.steps.size()) > config.max_steps_cap) {
    finish(rec, staged(Stage::StepGeneration, std::nullopt, std::nullopt,
                       "CapExceeded: parsed " + std::to_string(plan.steps.size()) +
                           " steps, cap is " + std::to_string(config.max_steps_cap)));
    return rec;
  }
  rec.plan = plan;
  rec.qa_chains = std::vector<QaChain>{};

  const std::string titles = plan_titles(plan);

  // per-step self-questioning, answers accumulate into the thinking process
  for (const Step& step : plan.steps) {
    ChatRequest q_req =
        render(templates.get(kTplQotQuestions),
               {{"objective", objective.text},
                {"plan_titles", titles},
                {"step_index", std::to_string(step.index)},
                {"step_title", step.title},
                {"step_description", step.description}},
               config.model_name, config.temperature, seed);
    Completion q_call = call_and_record(rec, provider, q_req, config.retry);
    if (!q_call.ok()) {
      finish(rec, restage(Stage::QuestionGeneration, step.index, std::nullopt,
                          q_call.result.error()));
      return rec;
    }
    auto parsed_chain = parse_questions(q_call.result.value().content, step.index);
    if (!parsed_chain.ok()) {
      finish(rec, staged(Stage::QuestionGeneration, step.index, std::nullopt,
                         to_string(parsed_chain.error().kind) + ": " +
                             parsed_chain.error().message));
      return rec;
    }
    QaChain chain = std::move(parsed_chain).value();
    if (static_cast<int>(chain.items.size()) > config.max_questions_per_step_cap) {
      finish(rec, staged(Stage::QuestionGeneration, step.index, std::nullopt,
                         "CapExceeded: parsed " + std::to_string(chain.items.size()) +
                             " questions for step " + std::to_string(step.index) +
                             ", cap is " +
                             std::to_string(config.max_questions_per_step_cap)));
      return rec;
    }
    rec.qa_chains->push_back(chain);
    QaChain& stored_chain = rec.qa_chains->back();

    for (QaItem& item : stored_chain.items) {
      ChatRequest a_req =
          render(templates.get(kTplQotAnswer),
                 {{"objective", objective.text},
                  {"step_index", std::to_string(step.index)},
                  {"step_title", step.title},
                  {"step_description", step.description},
                  {"thinking_process", format_tp_transcript(rec.plan, *rec.thinking_process)},
                  {"question", item.question}},
                 config.model_name, config.temperature, seed);
      Completion a_call = call_and_record(rec, provider, a_req, config.retry);
      if (!a_call.ok()) {
        finish(rec, restage(Stage::AnswerGeneration, step.index, item.question_index,
                            a_call.result.error()));
        return rec;
      }
      item.answer = a_call.result.value().content;
      rec.thinking_process->entries.push_back(item);
    }
  }

  // synthesis integrates the accumulated thinking process
  ChatRequest synth_req =
      render(templates.get(kTplQotSynthesize),
             {{"objective", objective.text},
              {"thinking_process", format_tp_transcript(rec.plan, *rec.thinking_process)}},
             config.model_name, config.temperature, seed);
  Completion synth_call = call_and_record(rec, provider, synth_req, config.retry);
  if (!synth_call.ok()) {
    finish(rec, restage(Stage::Synthesis, std::nullopt, std::nullopt,
                        synth_call.result.error()));
    return rec;
  }
  const std::string& text = synth_call.result.value().content;
  if (text.empty()) {
    finish(rec, staged(Stage::Synthesis, std::nullopt, std::nullopt,
                       "synthesis returned an empty completion"));
    return rec;
  }
  rec.solution = FinalSolution{text, extract_code_artifacts(text)};
  finish(rec, std::nullopt);
  return rec;
}

RunRecord run_single_pass(const Objective& objective, const StrategyConfig& config,
                          Provider& provider, const TemplateRegistry& templates,
                          const RunContext& ctx) {
  if (config.strategy == Strategy::Qot) {
    throw QotError("run_single_pass requires a noqot or cot strategy");
  }
  RunRecord rec = make_record(objective, config, ctx);

  const char* template_id =
      config.strategy == Strategy::Cot ? kTplCotDirect : kTplNoQotDirect;
  ChatRequest req = render(templates.get(template_id), {{"objective", objective.text}},
                           config.model_name, config.temperature,
                           std::optional<long long>(ctx.seed));
  Completion call = call_and_record(rec, provider, req, config.retry);
  if (!call.ok()) {
    finish(rec, restage(Stage::Synthesis, std::nullopt, std::nullopt, call.result.error()));
    return rec;
  }
  const std::string& text = call.result.value().content;
  if (text.empty()) {
    finish(rec, staged(Stage::Synthesis, std::nullopt, std::nullopt,
                       "completion was empty"));
    return rec;
  }
  rec.solution = FinalSolution{text, extract_code_artifacts(text)};
  finish(rec, std::nullopt);
  return rec;
}

CostEstimate estimate_cost(const PlanShape& shape, double unit_cost) {
  if (shape.steps < 1) throw InvalidShape("step count must be >= 1");
  if (unit_cost <= 0.0) throw InvalidShape("unit cost must be > 0");

  CostEstimate est;
  est.step_count = shape.steps;
  est.unit_cost = unit_cost;
  if (const int* uniform = std::get_if<int>(&shape.questions)) {
    if (*uniform < 1) throw InvalidShape("questions per step must be >= 1");
    est.uniform_questions = *uniform;
    est.questions_per_step.assign(static_cast<std::size_t>(shape.steps), *uniform);
  } else {
    const auto& per_step = std::get<std::vector<int>>(shape.questions);
    if (static_cast<int>(per_step.size()) != shape.steps) {
      throw InvalidShape("per-step question list length must equal step count");
    }
    for (int m : per_step) {
      if (m < 1) throw InvalidShape("questions per step must be >= 1");
    }
    est.questions_per_step = per_step;
  }
  int answers = 0;
  for (int m : est.questions_per_step) answers += m;
  est.total_calls = 2 + est.step_count + answers;
  est.total_cost = unit_cost * est.total_calls;
  return est;
}

}  // namespace qot
