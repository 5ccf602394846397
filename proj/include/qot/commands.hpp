#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qot/report.hpp"

namespace qot {

struct CliOptions {
  std::string config_path;
  bool dry_run = false;
  std::optional<int> parallelism;
  std::optional<std::string> out;  // overrides output_root
};

/// Executes the experiment matrix; prints cells run / skipped / failed.
/// Exit 0 iff no cell failed.
int cmd_run(const CliOptions& options, std::ostream& out, std::ostream& err);

/// Assembles and scores evaluation round k; round k-1 must exist for k >= 2.
int cmd_judge(const CliOptions& options, int round, std::ostream& out, std::ostream& err);

/// Writes summary.md / summary.csv from the latest scored round (or --round).
int cmd_report(const CliOptions& options, std::optional<int> round,
               std::optional<ReportFormat> only_format, std::ostream& out,
               std::ostream& err);

int cmd_tasks_list(const CliOptions& options, std::ostream& out, std::ostream& err);

/// questions: one uniform count, or one count per step.
int cmd_cost_estimate(int steps, const std::vector<int>& questions, double unit_cost,
                      std::ostream& out, std::ostream& err);

}  // namespace qot
