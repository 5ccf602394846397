#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qot/catalog.hpp"
#include "qot/engine.hpp"
#include "qot/provider.hpp"
#include "qot/templates.hpp"
#include "qot/types.hpp"

namespace qot {

struct ExperimentPlan {
  std::string experiment_id;
  std::vector<std::string> models;
  std::vector<Strategy> strategies;
  std::vector<std::string> tasks;
  int repetitions = 5;
  long long base_seed = 0;

  std::size_t cell_count() const {
    return models.size() * strategies.size() * tasks.size() *
           static_cast<std::size_t>(repetitions);
  }
};

struct CellKey {
  std::string model;
  std::string task_id;
  Strategy strategy = Strategy::Qot;
  int repetition = 1;

  bool operator==(const CellKey&) const = default;
};

std::string cell_run_id(const CellKey& key);

/// Deterministic per-cell seed from the plan's base seed and the cell identity.
long long cell_seed(long long base_seed, const CellKey& key);

struct CellOutcome {
  CellKey key;
  long long seed = 0;
  std::string path;  // run-record file, relative to the output root
  bool skipped = false;
  std::optional<StructuredError> error;  // nullopt means success

  bool succeeded() const { return !error.has_value(); }
};

struct ExperimentManifest {
  std::string experiment_id;
  std::vector<CellOutcome> cells;

  int run_count() const;
  int skip_count() const;
  int fail_count() const;
};

using ProviderFactory = std::function<std::shared_ptr<Provider>(const CellKey&)>;

struct BenchConfig {
  ExperimentPlan plan;
  double temperature = 0.7;
  RetryPolicy retry;
  int max_steps_cap = 20;
  int max_questions_per_step_cap = 15;
  int parallelism = 1;
  std::filesystem::path output_root = ".";
};

/// Runs every cell of the matrix, one run-record file per cell under
/// runs/<experiment>/<model>/<task>/<strategy>/rep_<k>.json. Cells whose file
/// already exists are skipped, so interrupted experiments resume. Per-cell
/// failures are recorded in the manifest and never abort the matrix.
ExperimentManifest execute(const BenchConfig& config,
                           const std::vector<TaskSpec>& catalog,
                           const TemplateRegistry& templates,
                           const ProviderFactory& provider_factory);

std::filesystem::path run_record_path(const std::filesystem::path& output_root,
                                      const std::string& experiment_id,
                                      const CellKey& key);

std::filesystem::path manifest_path(const std::filesystem::path& output_root,
                                    const std::string& experiment_id);

void save_manifest(const std::filesystem::path& output_root, const ExperimentManifest& manifest);
ExperimentManifest load_manifest(const std::filesystem::path& output_root,
                                 const std::string& experiment_id);

}  // namespace qot
