#include "qot/validate.hpp"

#include <set>
#include <sstream>

#include "qot/errors.hpp"

namespace qot {

namespace {

void check_plan(const StepPlan& plan, std::vector<std::string>& out) {
  const int n = static_cast<int>(plan.steps.size());
  if (n < 1) {
    out.push_back("step plan is empty");
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (plan.steps[i].index != i + 1) {
      std::ostringstream os;
      os << "step indices not 1.." << n << " (position " << i + 1 << " has index "
         << plan.steps[i].index << ")";
      out.push_back(os.str());
      break;
    }
    if (plan.steps[i].description.empty()) {
      out.push_back("step " + std::to_string(i + 1) + " has empty description");
    }
  }
}

void check_chain(const QaChain& chain, std::vector<std::string>& out) {
  if (chain.items.empty()) {
    out.push_back("qa chain for step " + std::to_string(chain.step_index) + " is empty");
    return;
  }
  for (std::size_t j = 0; j < chain.items.size(); ++j) {
    const QaItem& item = chain.items[j];
    if (item.step_index != chain.step_index) {
      out.push_back("qa item step index mismatch in chain " +
                    std::to_string(chain.step_index));
    }
    if (item.question_index != static_cast<int>(j) + 1) {
      out.push_back("question indices not 1..m in chain " +
                    std::to_string(chain.step_index));
      break;
    }
    if (item.question.empty()) {
      out.push_back("empty question at (" + std::to_string(item.step_index) + "," +
                    std::to_string(item.question_index) + ")");
    }
  }
}

}  // namespace

int total_calls(const StepPlan& plan, const std::vector<QaChain>& chains) {
  if (chains.size() != plan.steps.size()) {
    throw MismatchedChains("chains count " + std::to_string(chains.size()) +
                           " does not match plan steps " +
                           std::to_string(plan.steps.size()));
  }
  int answers = 0;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (chains[i].step_index != plan.steps[i].index) {
      throw MismatchedChains("chain step index " + std::to_string(chains[i].step_index) +
                             " does not match plan step " +
                             std::to_string(plan.steps[i].index));
    }
    answers += static_cast<int>(chains[i].items.size());
  }
  const int n = static_cast<int>(plan.steps.size());
  return 2 + n + answers;  // steps call + per-step question calls + answers + synthesis
}

ValidationVerdict validate_run_record(const RunRecord& record) {
  ValidationVerdict verdict;
  auto& v = verdict.violations;

  if (record.repetition_index < 1) v.push_back("repetition_index < 1");
  if (record.provider_call_count < 0) v.push_back("provider_call_count negative");
  if (record.provider_call_count != static_cast<int>(record.transcript.size())) {
    v.push_back("provider_call_count " + std::to_string(record.provider_call_count) +
                " != transcript length " + std::to_string(record.transcript.size()));
  }

  const std::string strategy_name = to_string(record.strategy);
  if (record.strategy != Strategy::Qot) {
    if (record.plan.has_value()) v.push_back("plan present for " + strategy_name);
    if (record.qa_chains.has_value()) v.push_back("qa_chains present for " + strategy_name);
    if (record.thinking_process.has_value()) {
      v.push_back("thinking_process present for " + strategy_name);
    }
    if (record.succeeded() && record.transcript.size() != 1) {
      v.push_back("single-pass run has " + std::to_string(record.transcript.size()) +
                  " transcript entries");
    }
  }

  if (record.plan.has_value()) check_plan(*record.plan, v);
  if (record.qa_chains.has_value()) {
    for (const auto& chain : *record.qa_chains) check_chain(chain, v);
  }

  if (record.thinking_process.has_value()) {
    const auto& entries = record.thinking_process->entries;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (!entries[k].answer.has_value()) {
        v.push_back("TP entry (" + std::to_string(entries[k].step_index) + "," +
                    std::to_string(entries[k].question_index) + ") has no answer");
      }
      if (k > 0) {
        const auto& a = entries[k - 1];
        const auto& b = entries[k];
        if (std::pair(a.step_index, a.question_index) >=
            std::pair(b.step_index, b.question_index)) {
          v.push_back("TP ordering violated at entry " + std::to_string(k + 1));
        }
      }
    }
  }

  if (record.error.has_value()) {
    const StructuredError& e = *record.error;
    const bool wants_step = e.stage == Stage::QuestionGeneration ||
                            e.stage == Stage::AnswerGeneration;
    if (e.step_index.has_value() != wants_step) {
      v.push_back("error step_index presence inconsistent with stage " + to_string(e.stage));
    }
    if (e.question_index.has_value() != (e.stage == Stage::AnswerGeneration)) {
      v.push_back("error question_index presence inconsistent with stage " +
                  to_string(e.stage));
    }
  }

  if (record.strategy == Strategy::Qot && record.succeeded()) {
    if (!record.plan.has_value()) v.push_back("successful qot run missing plan");
    if (!record.qa_chains.has_value()) v.push_back("successful qot run missing qa_chains");
    if (!record.thinking_process.has_value()) {
      v.push_back("successful qot run missing thinking_process");
    }
    if (!record.solution.has_value()) v.push_back("successful qot run missing solution");
    if (record.plan && record.qa_chains) {
      try {
        const int expected = total_calls(*record.plan, *record.qa_chains);
        if (record.provider_call_count != expected) {
          v.push_back("provider_call_count " + std::to_string(record.provider_call_count) +
                      " != 2 + n + sum(m_i) = " + std::to_string(expected));
        }
        if (record.thinking_process) {
          const int expected_tp = expected - 2 - static_cast<int>(record.plan->steps.size());
          if (static_cast<int>(record.thinking_process->entries.size()) != expected_tp) {
            v.push_back("TP size " +
                        std::to_string(record.thinking_process->entries.size()) +
                        " != sum(m_i) = " + std::to_string(expected_tp));
          }
        }
      } catch (const MismatchedChains& e) {
        v.push_back(std::string("plan/chains mismatch: ") + e.what());
      }
    }
  }

  if (record.succeeded() && record.solution.has_value() && record.solution->text.empty()) {
    v.push_back("successful run has empty solution text");
  }

  return verdict;
}

}  // namespace qot
