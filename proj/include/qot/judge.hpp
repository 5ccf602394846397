#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qot/catalog.hpp"
#include "qot/experiment.hpp"
#include "qot/provider.hpp"
#include "qot/templates.hpp"
#include "qot/types.hpp"

namespace qot {

inline constexpr const char* kMethodLabels[] = {"Method_A", "Method_B", "Method_C"};

/// Per-round bijection strategy -> anonymized label, hidden from the judge.
struct BlindingMap {
  std::string round_id;
  std::vector<std::pair<Strategy, std::string>> assignments;
  long long permutation_seed = 0;

  const std::string& label_of(Strategy s) const;
  Strategy strategy_of(const std::string& label) const;
};

/// Seeded uniform label assignment; deterministic for a fixed seed. Throws
/// TooManyMethods beyond three strategies (the label vocabulary is fixed).
BlindingMap blind(const std::vector<Strategy>& strategies, long long seed,
                  const std::string& round_id = "");

/// One (model, task, repetition) judging unit carrying the blinded codebases
/// of every strategy. strategy_scores is filled (unblinded) after judging.
struct JudgeUnit {
  std::string model;
  std::string task_id;
  int repetition = 1;
  std::map<std::string, std::string> submissions;       // label -> codebase text
  std::map<std::string, RubricScore> label_scores;      // blinded view
  std::map<std::string, RubricScore> strategy_scores;   // strategy name -> score
  std::optional<std::string> failure;
};

/// How much of round k-1 a unit's judge prompt embeds.
enum class PriorScope { Cell, Round };

struct PriorContext {
  int round_index = 0;
  std::vector<JudgeUnit> units;  // raw codebases and raw scores of round k-1
};

struct EvaluationRound {
  int round_index = 1;
  std::string experiment_id;
  BlindingMap blinding;
  std::vector<JudgeUnit> units;
  std::optional<PriorContext> prior_context;  // present iff round_index >= 2
  bool scored = false;
};

/// Builds round k from the experiment's persisted run records. Requires the
/// prior round exactly when k >= 2 (MissingPrior / RoundMismatch otherwise).
/// Units cover every (model, task, repetition) whose configured strategies
/// all succeeded; incomplete units are recorded as failed.
EvaluationRound assemble_round(int k, const ExperimentManifest& manifest,
                               const std::filesystem::path& output_root,
                               const std::vector<Strategy>& strategies,
                               const std::optional<EvaluationRound>& prior,
                               long long blind_seed);

/// The exact prompt text a unit's judge call sends (for payload audits).
ChatRequest render_judge_request(const EvaluationRound& round, const JudgeUnit& unit,
                                 const std::vector<TaskSpec>& catalog,
                                 const TemplateRegistry& templates,
                                 const std::string& judge_model,
                                 double judge_temperature,
                                 PriorScope prior_scope = PriorScope::Cell);

struct JudgeOptions {
  std::string judge_model;
  double temperature = 0.0;
  RetryPolicy retry;
  int parallelism = 1;
  PriorScope prior_scope = PriorScope::Cell;
};

/// Scores every unit with one judge call each; parse or transport failures
/// mark the unit failed and never abort the round.
EvaluationRound score_round(EvaluationRound round, Provider& judge_provider,
                            const std::vector<TaskSpec>& catalog,
                            const TemplateRegistry& templates,
                            const JudgeOptions& options);

std::filesystem::path round_path(const std::filesystem::path& output_root,
                                 const std::string& experiment_id, int round_index);

void save_round(const std::filesystem::path& output_root, const EvaluationRound& round);
EvaluationRound load_round(const std::filesystem::path& output_root,
                           const std::string& experiment_id, int round_index);
std::optional<int> latest_round_index(const std::filesystem::path& output_root,
                                      const std::string& experiment_id);

}  // namespace qot
