#include "qot/experiment.hpp"

#include <fstream>
#include <mutex>

#include <json.hpp>

#include "qot/errors.hpp"
#include "qot/json_io.hpp"
#include "qot/parallel.hpp"

namespace qot {

namespace {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string cell_run_id(const CellKey& key) {
  return key.model + "/" + key.task_id + "/" + to_string(key.strategy) + "/rep_" +
         std::to_string(key.repetition);
}

long long cell_seed(long long base_seed, const CellKey& key) {
  const std::uint64_t h = fnv1a64(cell_run_id(key));
  const std::uint64_t mixed = splitmix64(h ^ splitmix64(static_cast<std::uint64_t>(base_seed)));
  // keep seeds positive so they survive any JSON tooling that dislikes int64 extremes
  return static_cast<long long>(mixed & 0x7FFFFFFFFFFFFFFFULL);
}

int ExperimentManifest::run_count() const {
  int n = 0;
  for (const auto& c : cells) {
    if (!c.skipped) ++n;
  }
  return n;
}

int ExperimentManifest::skip_count() const {
  int n = 0;
  for (const auto& c : cells) {
    if (c.skipped) ++n;
  }
  return n;
}

int ExperimentManifest::fail_count() const {
  int n = 0;
  for (const auto& c : cells) {
    if (!c.succeeded()) ++n;
  }
  return n;
}

std::filesystem::path run_record_path(const std::filesystem::path& output_root,
                                      const std::string& experiment_id,
                                      const CellKey& key) {
  return output_root / "runs" / experiment_id / key.model / key.task_id /
         to_string(key.strategy) / ("rep_" + std::to_string(key.repetition) + ".json");
}

std::filesystem::path manifest_path(const std::filesystem::path& output_root,
                                    const std::string& experiment_id) {
  return output_root / "experiments" / experiment_id / "manifest.json";
}

ExperimentManifest execute(const BenchConfig& config,
                           const std::vector<TaskSpec>& catalog,
                           const TemplateRegistry& templates,
                           const ProviderFactory& provider_factory) {
  const ExperimentPlan& plan = config.plan;
  if (plan.models.empty() || plan.strategies.empty() || plan.tasks.empty() ||
      plan.repetitions < 1) {
    throw QotError("experiment plan must name models, strategies, tasks and >= 1 repetition");
  }

  std::vector<CellKey> cells;
  cells.reserve(plan.cell_count());
  for (const auto& model : plan.models) {
    for (const auto& task : plan.tasks) {
      for (const auto strategy : plan.strategies) {
        for (int rep = 1; rep <= plan.repetitions; ++rep) {
          cells.push_back(CellKey{model, task, strategy, rep});
        }
      }
    }
  }

  ExperimentManifest manifest;
  manifest.experiment_id = plan.experiment_id;
  manifest.cells.resize(cells.size());

  parallel_for(cells.size(), config.parallelism, [&](std::size_t i) {
    const CellKey& key = cells[i];
    CellOutcome outcome;
    outcome.key = key;
    outcome.seed = cell_seed(plan.base_seed, key);
    const auto path = run_record_path(config.output_root, plan.experiment_id, key);
    outcome.path =
        std::filesystem::relative(path, config.output_root).generic_string();

    try {
      if (std::filesystem::exists(path)) {
        // resumable: a persisted cell is never re-run
        RunRecord existing = load_run_record(path);
        outcome.skipped = true;
        outcome.error = existing.error;
        manifest.cells[i] = std::move(outcome);
        return;
      }

      const TaskSpec* task = find_task(catalog, key.task_id);
      if (task == nullptr) {
        throw QotError("unknown task id '" + key.task_id + "'");
      }
      StrategyConfig strategy_config;
      strategy_config.strategy = key.strategy;
      strategy_config.model_name = key.model;
      strategy_config.temperature = config.temperature;
      strategy_config.retry = config.retry;
      strategy_config.max_steps_cap = config.max_steps_cap;
      strategy_config.max_questions_per_step_cap = config.max_questions_per_step_cap;

      RunContext ctx;
      ctx.run_id = cell_run_id(key);
      ctx.repetition_index = key.repetition;
      ctx.seed = outcome.seed;

      auto provider = provider_factory(key);
      if (!provider) throw QotError("provider factory returned null for " + key.model);

      const Objective objective = objective_for(*task);
      RunRecord record =
          key.strategy == Strategy::Qot
              ? run_qot(objective, strategy_config, *provider, templates, ctx)
              : run_single_pass(objective, strategy_config, *provider, templates, ctx);
      save_run_record(path, record);
      outcome.error = record.error;
    } catch (const std::exception& e) {
      StructuredError err;
      err.stage = Stage::ProviderTransport;
      err.message = std::string("cell execution failed: ") + e.what();
      outcome.error = err;
    }
    manifest.cells[i] = std::move(outcome);
  });

  save_manifest(config.output_root, manifest);
  return manifest;
}

namespace {

json cell_to_json(const CellOutcome& c) {
  json j = {{"model", c.key.model},
            {"task_id", c.key.task_id},
            {"strategy", to_string(c.key.strategy)},
            {"repetition", c.key.repetition},
            {"seed", c.seed},
            {"path", c.path},
            {"skipped", c.skipped}};
  if (c.error) {
    j["outcome"] = "error";
    j["error"] = *c.error;
  } else {
    j["outcome"] = "success";
  }
  return j;
}

CellOutcome cell_from_json(const json& j) {
  CellOutcome c;
  c.key.model = j.at("model").get<std::string>();
  c.key.task_id = j.at("task_id").get<std::string>();
  auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
  if (!strategy) throw QotError("manifest cell has unknown strategy");
  c.key.strategy = *strategy;
  c.key.repetition = j.at("repetition").get<int>();
  c.seed = j.at("seed").get<long long>();
  c.path = j.at("path").get<std::string>();
  c.skipped = j.at("skipped").get<bool>();
  if (j.at("outcome").get<std::string>() == "error") {
    c.error = j.at("error").get<StructuredError>();
  }
  return c;
}

}  // namespace

void save_manifest(const std::filesystem::path& output_root,
                   const ExperimentManifest& manifest) {
  json cells = json::array();
  for (const auto& c : manifest.cells) cells.push_back(cell_to_json(c));
  json doc = {{"experiment_id", manifest.experiment_id},
              {"cells", std::move(cells)},
              {"run_count", manifest.run_count()},
              {"skip_count", manifest.skip_count()},
              {"fail_count", manifest.fail_count()}};
  const auto path = manifest_path(output_root, manifest.experiment_id);
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw QotError("cannot write manifest: " + path.string());
  out << doc.dump(2) << "\n";
}

ExperimentManifest load_manifest(const std::filesystem::path& output_root,
                                 const std::string& experiment_id) {
  const auto path = manifest_path(output_root, experiment_id);
  std::ifstream in(path);
  if (!in) throw QotError("cannot read manifest: " + path.string());
  json doc = json::parse(in);
  ExperimentManifest manifest;
  manifest.experiment_id = doc.at("experiment_id").get<std::string>();
  for (const auto& c : doc.at("cells")) manifest.cells.push_back(cell_from_json(c));
  return manifest;
}

}  // namespace qot
