#pragma once

#include <string>
#include <vector>

#include "qot/catalog.hpp"
#include "qot/judge.hpp"
#include "qot/types.hpp"

namespace qot {

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;       // sample standard deviation, divisor n-1
  bool single_sample = false;  // n = 1: std reported as 0, flagged
};

/// Throws EmptyInput on an empty vector.
MeanStd mean_std(const std::vector<double>& xs);

/// Per-domain treatment-minus-baseline series, paired by repetition.
struct DeltaSeries {
  std::string model_name;
  std::string comparison;  // e.g. "qot_vs_noqot"
  std::string domain;      // task_id
  std::vector<int> per_run_deltas;
  double mean = 0.0;
  double std_dev = 0.0;
  bool single_sample = false;
};

struct ScoredRun {
  std::string model;
  std::string task_id;
  Strategy strategy = Strategy::Qot;
  int repetition = 1;
  RubricScore score;
};

/// deltas[r] = total(treatment, r) - total(baseline, r), repetitions paired by
/// index. Throws UnpairedRuns when the two repetition sets differ.
DeltaSeries delta_series(const std::vector<ScoredRun>& scores, const std::string& model,
                         const std::string& domain, Strategy treatment, Strategy baseline);

/// (treatment - baseline) / baseline * 100. Throws NonPositiveBaseline.
double percent_improvement(double baseline_total, double treatment_total);

struct ImprovementSummary {
  std::string label;
  double baseline_total = 0.0;
  double treatment_total = 0.0;
  double percent = 0.0;
};

enum class ReportFormat { Markdown, Csv };

/// Deterministic rendering: one panel per comparison, rows by model, columns
/// by domain in catalog order; cells formatted "mean ± std" to 2 decimals
/// with signs preserved. CSV columns: model, comparison, domain, n_runs,
/// mean, std, per_run_deltas (semicolon-joined).
std::string emit_tables(const std::vector<DeltaSeries>& series,
                        const std::vector<ImprovementSummary>& summaries,
                        ReportFormat format,
                        const std::vector<std::string>& domain_order = {});

/// Flattens a scored round into per-repetition scored runs.
std::vector<ScoredRun> collect_scores(const EvaluationRound& round);

struct ReportBundle {
  std::vector<DeltaSeries> series;
  std::vector<ImprovementSummary> summaries;
  std::vector<std::string> domain_order;
};

/// Builds every available qot-vs-baseline series and per-model improvement
/// summary (grand totals across domains) from one scored round.
ReportBundle build_report(const EvaluationRound& round, const std::vector<TaskSpec>& catalog);

}  // namespace qot
