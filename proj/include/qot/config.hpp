#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qot/experiment.hpp"
#include "qot/judge.hpp"
#include "qot/provider.hpp"

namespace qot {

struct EndpointConfig {
  std::string base_url;
  std::string model;           // judge endpoint only; generation models come from the plan
  std::string api_key_env = "QOT_API_KEY";
  double temperature = 0.7;
  int timeout_seconds = 120;
};

/// Operator configuration, one JSON document. Environment variables override
/// secrets only (API keys); experiment parameters live in the file so run
/// records fully determine reproducibility.
struct HarnessConfig {
  ExperimentPlan plan;
  EndpointConfig generation;  // default temperature 0.7
  EndpointConfig judge;       // default temperature 0.0
  RetryPolicy retry;
  int max_steps_cap = 20;
  int max_questions_per_step_cap = 15;
  int parallelism = 1;
  PriorScope judge_prior_scope = PriorScope::Cell;
  std::filesystem::path output_root = ".";
  std::filesystem::path templates_dir;  // empty: built-in templates only
  std::optional<std::filesystem::path> tasks_dir;
  std::optional<std::filesystem::path> fixtures_dir;  // required for --dry-run
};

/// Parses and validates; throws ConfigError naming the offending field.
/// Relative paths resolve against the config file's directory.
HarnessConfig load_config(const std::filesystem::path& path);

/// Catalog per config: built-in tasks, or the override directory when set.
std::vector<TaskSpec> catalog_for(const HarnessConfig& config);

/// Cross-checks (task ids exist, repetitions >= 1, ...); throws ConfigError.
void validate_config(const HarnessConfig& config, const std::vector<TaskSpec>& catalog);

}  // namespace qot
