#include "qot/judge.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qot/errors.hpp"
#include "qot/json_io.hpp"
#include "qot/parallel.hpp"
#include "qot/parsers.hpp"

namespace qot {

namespace {

using nlohmann::json;

/// splitmix64 stream; deterministic across platforms and standard libraries.
struct SeededRng {
  std::uint64_t state;
  explicit SeededRng(long long seed) : state(static_cast<std::uint64_t>(seed)) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::size_t bounded(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

std::string format_score(const RubricScore& s) {
  std::ostringstream os;
  os << "scalability " << s.scalability << ", completeness " << s.completeness
     << ", modularity " << s.modularity << ", security " << s.security << ", total "
     << s.total();
  return os.str();
}

std::string submission_body(const FinalSolution& solution) {
  if (solution.extracted_artifacts.empty()) return solution.text;
  std::ostringstream os;
  for (const auto& artifact : solution.extracted_artifacts) {
    os << "--- file: " << artifact.filename << " ---\n" << artifact.content << "\n";
  }
  return os.str();
}

std::vector<std::string> sorted_labels(const BlindingMap& blinding) {
  std::vector<std::string> labels;
  for (const auto& [strategy, label] : blinding.assignments) {
    (void)strategy;
    labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end());
  return labels;
}

std::string prior_unit_text(const JudgeUnit& unit) {
  std::ostringstream os;
  for (const auto& [label, text] : unit.submissions) {
    os << "### Earlier submission " << label;
    auto it = unit.label_scores.find(label);
    if (it != unit.label_scores.end()) {
      os << " (scored: " << format_score(it->second) << ")";
    }
    os << "\n" << text << "\n";
  }
  return os.str();
}

}  // namespace

const std::string& BlindingMap::label_of(Strategy s) const {
  for (const auto& [strategy, label] : assignments) {
    if (strategy == s) return label;
  }
  throw QotError("blinding map has no label for strategy " + to_string(s));
}

Strategy BlindingMap::strategy_of(const std::string& label) const {
  for (const auto& [strategy, assigned] : assignments) {
    if (assigned == label) return strategy;
  }
  throw QotError("blinding map has no strategy for label " + label);
}

BlindingMap blind(const std::vector<Strategy>& strategies, long long seed,
                  const std::string& round_id) {
  if (strategies.empty()) throw QotError("cannot blind an empty strategy list");
  if (strategies.size() > 3) {
    throw TooManyMethods("label vocabulary is fixed at three methods, got " +
                         std::to_string(strategies.size()));
  }
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    for (std::size_t j = i + 1; j < strategies.size(); ++j) {
      if (strategies[i] == strategies[j]) throw QotError("duplicate strategy in blinding");
    }
  }

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < strategies.size(); ++i) labels.push_back(kMethodLabels[i]);

  SeededRng rng(seed);
  for (std::size_t i = labels.size(); i > 1; --i) {  // Fisher-Yates
    std::swap(labels[i - 1], labels[rng.bounded(i)]);
  }

  BlindingMap map;
  map.round_id = round_id;
  map.permutation_seed = seed;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    map.assignments.emplace_back(strategies[i], labels[i]);
  }
  return map;
}

EvaluationRound assemble_round(int k, const ExperimentManifest& manifest,
                               const std::filesystem::path& output_root,
                               const std::vector<Strategy>& strategies,
                               const std::optional<EvaluationRound>& prior,
                               long long blind_seed) {
  if (k < 1) throw QotError("round index must be >= 1");
  if (k >= 2 && !prior.has_value()) {
    throw MissingPrior("round " + std::to_string(k) + " requires round " +
                       std::to_string(k - 1) + " to exist");
  }
  if (k == 1 && prior.has_value()) {
    throw RoundMismatch("round 1 takes no prior round");
  }
  if (prior.has_value() && prior->round_index != k - 1) {
    throw RoundMismatch("round " + std::to_string(k) + " requires prior round " +
                        std::to_string(k - 1) + ", got round " +
                        std::to_string(prior->round_index));
  }

  EvaluationRound round;
  round.round_index = k;
  round.experiment_id = manifest.experiment_id;
  round.blinding =
      blind(strategies, blind_seed, manifest.experiment_id + "/round_" + std::to_string(k));

  // one unit per (model, task, repetition); all strategies must have succeeded
  std::vector<std::tuple<std::string, std::string, int>> unit_keys;
  for (const auto& cell : manifest.cells) {
    auto key = std::tuple(cell.key.model, cell.key.task_id, cell.key.repetition);
    if (std::find(unit_keys.begin(), unit_keys.end(), key) == unit_keys.end()) {
      unit_keys.push_back(key);
    }
  }
  std::sort(unit_keys.begin(), unit_keys.end());

  for (const auto& [model, task_id, repetition] : unit_keys) {
    JudgeUnit unit;
    unit.model = model;
    unit.task_id = task_id;
    unit.repetition = repetition;

    std::vector<std::string> missing;
    for (Strategy strategy : strategies) {
      const CellOutcome* found = nullptr;
      for (const auto& cell : manifest.cells) {
        if (cell.key.model == model && cell.key.task_id == task_id &&
            cell.key.repetition == repetition && cell.key.strategy == strategy) {
          found = &cell;
          break;
        }
      }
      if (found == nullptr || !found->succeeded()) {
        missing.push_back(to_string(strategy));
        continue;
      }
      RunRecord record = load_run_record(output_root / found->path);
      if (!record.solution.has_value()) {
        missing.push_back(to_string(strategy));
        continue;
      }
      unit.submissions[round.blinding.label_of(strategy)] =
          submission_body(*record.solution);
    }
    if (!missing.empty()) {
      std::string joined;
      for (const auto& m : missing) joined += (joined.empty() ? "" : ", ") + m;
      unit.failure = "missing successful runs for: " + joined;
      unit.submissions.clear();
    }
    round.units.push_back(std::move(unit));
  }

  if (prior.has_value()) {
    PriorContext context;
    context.round_index = prior->round_index;
    context.units = prior->units;
    round.prior_context = std::move(context);
  }
  return round;
}

ChatRequest render_judge_request(const EvaluationRound& round, const JudgeUnit& unit,
                                 const std::vector<TaskSpec>& catalog,
                                 const TemplateRegistry& templates,
                                 const std::string& judge_model, double judge_temperature,
                                 PriorScope prior_scope) {
  const TaskSpec* task = find_task(catalog, unit.task_id);
  if (task == nullptr) {
    throw QotError("judge unit references unknown task '" + unit.task_id + "'");
  }

  std::string labels_text;
  for (const auto& label : sorted_labels(round.blinding)) {
    if (!labels_text.empty()) labels_text += ", ";
    labels_text += label;
  }

  std::ostringstream submissions;
  for (const auto& [label, text] : unit.submissions) {
    submissions << "## Submission " << label << "\n\n" << text << "\n";
  }

  std::string prior_text =
      "This is the first evaluation round; there is no prior reference material.";
  if (round.prior_context.has_value()) {
    std::ostringstream os;
    os << "Reference material from evaluation round " << round.prior_context->round_index
       << ", provided to keep grading standards consistent across rounds. It shows "
          "earlier anonymized submissions and the scores they received. Grade the new "
          "submissions below on their own merits.\n";
    bool found_any = false;
    for (const auto& prior_unit : round.prior_context->units) {
      const bool same_cell = prior_unit.model == unit.model &&
                             prior_unit.task_id == unit.task_id &&
                             prior_unit.repetition == unit.repetition;
      if (prior_scope == PriorScope::Cell && !same_cell) continue;
      if (prior_unit.submissions.empty()) continue;
      os << prior_unit_text(prior_unit);
      found_any = true;
    }
    if (found_any) prior_text = os.str();
  }

  return render(templates.get(kTplJudgeRubric),
                {{"task", task->full_prompt},
                 {"labels", labels_text},
                 {"submissions", submissions.str()},
                 {"prior_context", prior_text}},
                judge_model, judge_temperature);
}

EvaluationRound score_round(EvaluationRound round, Provider& judge_provider,
                            const std::vector<TaskSpec>& catalog,
                            const TemplateRegistry& templates,
                            const JudgeOptions& options) {
  if (round.scored) throw QotError("round " + std::to_string(round.round_index) +
                                   " is already scored");

  std::set<std::string> expected_labels;
  for (const auto& [strategy, label] : round.blinding.assignments) {
    (void)strategy;
    expected_labels.insert(label);
  }

  parallel_for(round.units.size(), options.parallelism, [&](std::size_t i) {
    JudgeUnit& unit = round.units[i];
    if (unit.failure.has_value()) return;
    try {
      ChatRequest request =
          render_judge_request(round, unit, catalog, templates, options.judge_model,
                               options.temperature, options.prior_scope);
      Completion completion = complete(judge_provider, request, options.retry);
      if (!completion.ok()) {
        unit.failure = "judge call failed: " + completion.result.error().message;
        return;
      }
      auto parsed = parse_score_block(completion.result.value().content, expected_labels);
      if (!parsed.ok()) {
        unit.failure =
            to_string(parsed.error().kind) + ": " + parsed.error().message;
        return;
      }
      unit.label_scores = std::move(parsed).value();
      for (const auto& [label, score] : unit.label_scores) {
        unit.strategy_scores[to_string(round.blinding.strategy_of(label))] = score;
      }
    } catch (const std::exception& e) {
      unit.failure = std::string("judging failed: ") + e.what();
    }
  });

  round.scored = true;
  return round;
}

namespace {

json unit_to_json(const JudgeUnit& u) {
  json label_scores = json::object();
  for (const auto& [label, score] : u.label_scores) label_scores[label] = score;
  json strategy_scores = json::object();
  for (const auto& [name, score] : u.strategy_scores) strategy_scores[name] = score;
  return json{{"model", u.model},
              {"task_id", u.task_id},
              {"repetition", u.repetition},
              {"submissions", u.submissions},
              {"label_scores", std::move(label_scores)},
              {"strategy_scores", std::move(strategy_scores)},
              {"failure", u.failure}};
}

JudgeUnit unit_from_json(const json& j) {
  JudgeUnit u;
  u.model = j.at("model").get<std::string>();
  u.task_id = j.at("task_id").get<std::string>();
  u.repetition = j.at("repetition").get<int>();
  u.submissions = j.at("submissions").get<std::map<std::string, std::string>>();
  for (const auto& [label, score] : j.at("label_scores").items()) {
    u.label_scores[label] = score.get<RubricScore>();
  }
  for (const auto& [name, score] : j.at("strategy_scores").items()) {
    u.strategy_scores[name] = score.get<RubricScore>();
  }
  j.at("failure").get_to(u.failure);
  return u;
}

json blinding_to_json(const BlindingMap& b) {
  json assignments = json::array();
  for (const auto& [strategy, label] : b.assignments) {
    assignments.push_back({{"strategy", to_string(strategy)}, {"label", label}});
  }
  return json{{"round_id", b.round_id},
              {"assignments", std::move(assignments)},
              {"permutation_seed", b.permutation_seed}};
}

BlindingMap blinding_from_json(const json& j) {
  BlindingMap b;
  b.round_id = j.at("round_id").get<std::string>();
  b.permutation_seed = j.at("permutation_seed").get<long long>();
  for (const auto& a : j.at("assignments")) {
    auto strategy = strategy_from_string(a.at("strategy").get<std::string>());
    if (!strategy) throw QotError("blinding map has unknown strategy");
    b.assignments.emplace_back(*strategy, a.at("label").get<std::string>());
  }
  return b;
}

}  // namespace

std::filesystem::path round_path(const std::filesystem::path& output_root,
                                 const std::string& experiment_id, int round_index) {
  return output_root / "evaluations" / experiment_id /
         ("round_" + std::to_string(round_index) + ".json");
}

void save_round(const std::filesystem::path& output_root, const EvaluationRound& round) {
  json units = json::array();
  for (const auto& u : round.units) units.push_back(unit_to_json(u));
  json doc = {{"round_index", round.round_index},
              {"experiment_id", round.experiment_id},
              // the blinding map is reviewer metadata; it is never part of a judge payload
              {"blinding", blinding_to_json(round.blinding)},
              {"units", std::move(units)},
              {"scored", round.scored}};
  if (round.prior_context.has_value()) {
    json prior_units = json::array();
    for (const auto& u : round.prior_context->units) prior_units.push_back(unit_to_json(u));
    doc["prior_context"] = json{{"round_index", round.prior_context->round_index},
                                {"units", std::move(prior_units)}};
  } else {
    doc["prior_context"] = nullptr;
  }

  const auto path = round_path(output_root, round.experiment_id, round.round_index);
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw QotError("cannot write round: " + path.string());
  out << doc.dump(2) << "\n";
}

EvaluationRound load_round(const std::filesystem::path& output_root,
                           const std::string& experiment_id, int round_index) {
  const auto path = round_path(output_root, experiment_id, round_index);
  std::ifstream in(path);
  if (!in) throw QotError("cannot read round: " + path.string());
  json doc = json::parse(in);

  EvaluationRound round;
  round.round_index = doc.at("round_index").get<int>();
  round.experiment_id = doc.at("experiment_id").get<std::string>();
  round.blinding = blinding_from_json(doc.at("blinding"));
  for (const auto& u : doc.at("units")) round.units.push_back(unit_from_json(u));
  round.scored = doc.at("scored").get<bool>();
  if (!doc.at("prior_context").is_null()) {
    PriorContext context;
    context.round_index = doc.at("prior_context").at("round_index").get<int>();
    for (const auto& u : doc.at("prior_context").at("units")) {
      context.units.push_back(unit_from_json(u));
    }
    round.prior_context = std::move(context);
  }
  return round;
}

std::optional<int> latest_round_index(const std::filesystem::path& output_root,
                                      const std::string& experiment_id) {
  const auto dir = output_root / "evaluations" / experiment_id;
  if (!std::filesystem::is_directory(dir)) return std::nullopt;
  std::optional<int> latest;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("round_", 0) != 0 || entry.path().extension() != ".json") continue;
    try {
      const int k = std::stoi(name.substr(6));
      if (!latest || k > *latest) latest = k;
    } catch (...) {
      continue;
    }
  }
  return latest;
}

}  // namespace qot
