#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qot/types.hpp"

namespace qot {

struct TaskSpec {
  std::string task_id;
  std::string summary;
  std::vector<std::string> key_aspects;
  std::vector<std::string> modules;
  std::string full_prompt;

  bool operator==(const TaskSpec&) const = default;
};

/// The three built-in benchmark domains: api_design, data_communication,
/// file_systems.
std::vector<TaskSpec> builtin_catalog();

/// Catalog override: one JSON document per TaskSpec, *.json in `dir`.
std::vector<TaskSpec> load_task_dir(const std::filesystem::path& dir);

const TaskSpec* find_task(const std::vector<TaskSpec>& catalog, const std::string& task_id);

DomainTag domain_tag_for(const std::string& task_id);

/// Builds the objective a run receives for a task.
Objective objective_for(const TaskSpec& task);

}  // namespace qot
