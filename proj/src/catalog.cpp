#include "qot/catalog.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "qot/errors.hpp"

namespace qot {

std::vector<TaskSpec> builtin_catalog() {
  std::vector<TaskSpec> tasks;

  TaskSpec api;
  api.task_id = "api_design";
  api.summary =
      "Room booking backend with registration/login, room CRUD, reservation "
      "lifecycle, and notifications.";
  api.key_aspects = {"Validation", "access control", "defensive errors"};
  api.modules = {"User", "Room", "Booking", "Notify"};
  api.full_prompt =
      "Design and implement a room booking backend service. Provide user "
      "registration and login, room management with create, read, update and "
      "delete operations, a reservation lifecycle (create, modify, cancel), and "
      "notifications for booking events. Structure the solution into User, Room, "
      "Booking, and Notify modules. Emphasize input validation, access control, "
      "and defensive error handling throughout. Deliver runnable source code "
      "with clear module boundaries.";
  tasks.push_back(std::move(api));

  TaskSpec comm;
  comm.task_id = "data_communication";
  comm.summary =
      "Real-time messaging API with send/receive, timestamps, and history "
      "query/filtering.";
  comm.key_aspects = {"Schema checks", "retries", "basic observability"};
  comm.modules = {"User", "Message", "History"};
  comm.full_prompt =
      "Build a real-time messaging backend API. Support sending and receiving "
      "messages between users, attach server-side timestamps to every message, "
      "and provide history queries with filtering by user, time range, and "
      "content. Structure the solution into User, Message, and History modules. "
      "Emphasize schema validation of inbound payloads, retry behavior for "
      "transient delivery failures, and basic observability such as structured "
      "logs and counters. Deliver runnable source code with clear module "
      "boundaries.";
  tasks.push_back(std::move(comm));

  TaskSpec fs;
  fs.task_id = "file_systems";
  fs.summary =
      "File management API with upload/download/delete, metadata persistence, "
      "and per-user listing.";
  fs.key_aspects = {"Permissions", "metadata integrity", "failure-handling"};
  fs.modules = {"User", "File", "Metadata"};
  fs.full_prompt =
      "Implement a file management backend API. Support file upload, download, "
      "and deletion, persist per-file metadata (owner, size, content type, "
      "timestamps), and provide per-user file listing. Structure the solution "
      "into User, File, and Metadata modules. Emphasize permission checks on "
      "every operation, metadata integrity under concurrent updates, and failure "
      "handling for partial writes. Deliver runnable source code with clear "
      "module boundaries.";
  tasks.push_back(std::move(fs));

  return tasks;
}

std::vector<TaskSpec> load_task_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw QotError("task directory does not exist: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<TaskSpec> tasks;
  for (const auto& file : files) {
    std::ifstream in(file);
    nlohmann::json j = nlohmann::json::parse(in);
    TaskSpec task;
    task.task_id = j.at("task_id").get<std::string>();
    task.summary = j.at("summary").get<std::string>();
    task.key_aspects = j.at("key_aspects").get<std::vector<std::string>>();
    task.modules = j.at("modules").get<std::vector<std::string>>();
    task.full_prompt = j.at("full_prompt").get<std::string>();
    if (task.modules.empty()) {
      throw QotError("task '" + task.task_id + "' has no modules");
    }
    if (task.full_prompt.empty()) {
      throw QotError("task '" + task.task_id + "' has an empty prompt");
    }
    tasks.push_back(std::move(task));
  }
  return tasks;
}

const TaskSpec* find_task(const std::vector<TaskSpec>& catalog, const std::string& task_id) {
  for (const auto& task : catalog) {
    if (task.task_id == task_id) return &task;
  }
  return nullptr;
}

DomainTag domain_tag_for(const std::string& task_id) {
  return domain_tag_from_string(task_id);
}

Objective objective_for(const TaskSpec& task) {
  Objective obj;
  obj.id = task.task_id;
  obj.text = task.full_prompt;
  obj.domain_tag = domain_tag_for(task.task_id);
  return obj;
}

}  // namespace qot
