#include "qot/parsers.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace qot {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Extracts the balanced bracket slice starting at text[start], respecting
/// JSON string literals and escapes. Returns nullopt when unbalanced.
std::optional<std::string> balanced_slice(const std::string& text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '[' || c == '{') {
      ++depth;
    } else if (c == ']' || c == '}') {
      --depth;
      if (depth == 0) return text.substr(start, i - start + 1);
      if (depth < 0) return std::nullopt;
    }
  }
  return std::nullopt;
}

/// First substring that parses as a JSON value opening with `open`.
/// `accept` lets callers keep scanning for a candidate with the right shape.
std::optional<json> first_json(const std::string& text, char open,
                               const std::function<bool(const json&)>& accept) {
  std::optional<json> fallback;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != open) continue;
    auto slice = balanced_slice(text, i);
    if (!slice) continue;
    json parsed = json::parse(*slice, nullptr, false);
    if (parsed.is_discarded()) continue;
    if (!accept || accept(parsed)) return parsed;
    if (!fallback) fallback = std::move(parsed);
    i += slice->size() - 1;
  }
  return fallback;
}

/// Lines of the form "1. text" or "1) text", in order of appearance.
std::vector<std::string> numbered_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t d = i;
    while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
    if (d == i || d >= line.size()) continue;
    if (line[d] != '.' && line[d] != ')') continue;
    std::string rest = trim(line.substr(d + 1));
    if (rest.empty()) continue;
    out.push_back(std::move(rest));
  }
  return out;
}

std::string short_title(const std::string& text) {
  std::string first = text.substr(0, text.find('\n'));
  first = trim(first);
  if (first.size() > 80) first = first.substr(0, 77) + "...";
  return first;
}

/// {title, description} pairs from a completion, via the JSON-array path then
/// the numbered-line fallback. Empty result means neither path matched.
std::vector<std::pair<std::string, std::string>> parse_item_list(
    const std::string& completion, const char* object_text_key) {
  std::vector<std::pair<std::string, std::string>> items;
  auto arr = first_json(completion, '[', [](const json& j) { return j.is_array(); });
  if (arr && arr->is_array()) {
    for (const json& el : *arr) {
      if (el.is_string()) {
        std::string text = trim(el.get<std::string>());
        if (!text.empty()) items.emplace_back(short_title(text), text);
      } else if (el.is_object()) {
        std::string title = el.contains("title") && el["title"].is_string()
                                ? trim(el["title"].get<std::string>())
                                : "";
        std::string text = el.contains(object_text_key) && el[object_text_key].is_string()
                               ? trim(el[object_text_key].get<std::string>())
                               : "";
        if (title.empty() && text.empty()) continue;
        if (text.empty()) text = title;
        if (title.empty()) title = short_title(text);
        items.emplace_back(std::move(title), std::move(text));
      }
    }
  }
  if (items.empty()) {
    for (auto& line : numbered_lines(completion)) {
      items.emplace_back(short_title(line), line);
    }
  }
  return items;
}

const char* const kDimensions[] = {"scalability", "completeness", "modularity",
                                   "security"};

}  // namespace

std::string to_string(ParseError::Kind k) {
  switch (k) {
    case ParseError::Kind::StepParseFailure: return "StepParseFailure";
    case ParseError::Kind::QuestionParseFailure: return "QuestionParseFailure";
    case ParseError::Kind::ScoreParseFailure: return "ScoreParseFailure";
    case ParseError::Kind::ScoreOutOfRange: return "ScoreOutOfRange";
  }
  return "StepParseFailure";
}

ParseResult<StepPlan> parse_steps(const std::string& completion,
                                  const std::string& objective_id) {
  auto items = parse_item_list(completion, "description");
  if (items.empty()) {
    ParseError err;
    err.kind = ParseError::Kind::StepParseFailure;
    err.message = "no JSON step array and no numbered step lines found";
    return err;
  }
  StepPlan plan;
  plan.objective_id = objective_id;
  int index = 0;
  for (auto& [title, description] : items) {
    plan.steps.push_back(Step{++index, std::move(title), std::move(description)});
  }
  return plan;
}

ParseResult<QaChain> parse_questions(const std::string& completion, int step_index) {
  auto items = parse_item_list(completion, "question");
  if (items.empty()) {
    ParseError err;
    err.kind = ParseError::Kind::QuestionParseFailure;
    err.message = "no JSON question array and no numbered question lines found";
    return err;
  }
  QaChain chain;
  chain.step_index = step_index;
  int q = 0;
  for (auto& [title, text] : items) {
    (void)title;
    chain.items.push_back(QaItem{step_index, ++q, std::move(text), std::nullopt});
  }
  return chain;
}

ParseResult<std::map<std::string, RubricScore>> parse_score_block(
    const std::string& completion, const std::set<std::string>& expected_labels) {
  auto score_error = [](ParseError::Kind kind, std::string label, std::string dimension,
                        std::optional<double> value, std::string message) {
    ParseError err;
    err.kind = kind;
    err.label = std::move(label);
    err.dimension = std::move(dimension);
    err.value = value;
    err.message = std::move(message);
    return err;
  };

  auto looks_like_scores = [&](const json& j) {
    if (!j.is_object()) return false;
    for (const auto& label : expected_labels) {
      if (j.contains(label)) return true;
    }
    return false;
  };
  auto obj = first_json(completion, '{', looks_like_scores);
  if (!obj || !obj->is_object()) {
    return score_error(ParseError::Kind::ScoreParseFailure, "", "", std::nullopt,
                       "no JSON score object found in completion");
  }

  std::map<std::string, RubricScore> scores;
  for (const auto& label : expected_labels) {
    if (!obj->contains(label)) {
      return score_error(ParseError::Kind::ScoreParseFailure, label, "", std::nullopt,
                         "missing label '" + label + "'");
    }
    const json& inner = (*obj)[label];
    if (!inner.is_object()) {
      return score_error(ParseError::Kind::ScoreParseFailure, label, "", std::nullopt,
                         "label '" + label + "' is not a score object");
    }
    RubricScore score;
    int* fields[] = {&score.scalability, &score.completeness, &score.modularity,
                     &score.security};
    for (std::size_t d = 0; d < 4; ++d) {
      const char* dim = kDimensions[d];
      if (!inner.contains(dim)) {
        return score_error(ParseError::Kind::ScoreParseFailure, label, dim, std::nullopt,
                           "label '" + label + "' missing dimension '" + dim + "'");
      }
      const json& v = inner[dim];
      double num = 0.0;
      if (v.is_number_integer()) {
        num = static_cast<double>(v.get<long long>());
      } else if (v.is_number_float() && v.get<double>() == std::floor(v.get<double>())) {
        num = v.get<double>();
      } else {
        return score_error(ParseError::Kind::ScoreParseFailure, label, dim, std::nullopt,
                           "dimension '" + std::string(dim) + "' of '" + label +
                               "' is not an integer");
      }
      if (num < 1.0 || num > 4.0) {
        return score_error(ParseError::Kind::ScoreOutOfRange, label, dim, num,
                           "dimension '" + std::string(dim) + "' of '" + label + "' is " +
                               std::to_string(static_cast<long long>(num)) +
                               ", outside [1,4]");
      }
      *fields[d] = static_cast<int>(num);
    }
    scores[label] = score;
  }
  return scores;
}

namespace {

struct FenceLine {
  bool is_fence = false;
  std::string info;  // text after the backtick run
};

FenceLine classify_fence(const std::string& line) {
  FenceLine f;
  std::size_t i = 0;
  while (i < line.size() && line[i] == ' ' && i < 3) ++i;
  std::size_t ticks = 0;
  while (i + ticks < line.size() && line[i + ticks] == '`') ++ticks;
  if (ticks < 3) return f;
  f.is_fence = true;
  f.info = trim(line.substr(i + ticks));
  return f;
}

bool plausible_filename(const std::string& s) {
  if (s.empty() || s.size() > 120) return false;
  if (s.find("..") != std::string::npos) return false;
  bool has_dot = false;
  for (char c : s) {
    if (c == '.') has_dot = true;
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' ||
          c == '-' || c == '/')) {
      return false;
    }
  }
  if (!has_dot) return false;
  return s.back() != '.' && s.back() != '/';
}

std::optional<std::string> filename_hint(const std::string& raw_line) {
  std::string s = trim(raw_line);
  auto strip_wrap = [&](char mark) {
    while (s.size() >= 2 && s.front() == mark && s.back() == mark) {
      s = trim(s.substr(1, s.size() - 2));
    }
  };
  while (!s.empty() && s.front() == '#') s.erase(s.begin());
  s = trim(s);
  strip_wrap('*');
  strip_wrap('`');
  if (!s.empty() && s.back() == ':') s = trim(s.substr(0, s.size() - 1));
  strip_wrap('*');
  strip_wrap('`');
  for (const char* prefix : {"file:", "filename:", "File:", "Filename:", "FILE:"}) {
    const std::size_t len = std::string(prefix).size();
    if (s.size() > len && s.compare(0, len, prefix) == 0) {
      s = trim(s.substr(len));
      break;
    }
  }
  if (plausible_filename(s)) return s;
  return std::nullopt;
}

}  // namespace

std::vector<CodeArtifact> extract_code_artifacts(const std::string& completion) {
  std::vector<std::string> lines;
  {
    std::string current;
    for (char c : completion) {
      if (c == '\n') {
        if (!current.empty() && current.back() == '\r') current.pop_back();
        lines.push_back(std::move(current));
        current.clear();
      } else {
        current += c;
      }
    }
    lines.push_back(std::move(current));
  }

  std::vector<CodeArtifact> artifacts;
  std::size_t i = 0;
  int ordinal = 0;
  while (i < lines.size()) {
    FenceLine open = classify_fence(lines[i]);
    if (!open.is_fence) {
      ++i;
      continue;
    }
    ++ordinal;
    // A fence with an info string nests; a bare ``` closes one level, so the
    // outermost fence wins and inner fence lines stay in the content.
    int depth = 1;
    std::vector<std::string> content;
    std::size_t j = i + 1;
    for (; j < lines.size() && depth > 0; ++j) {
      FenceLine f = classify_fence(lines[j]);
      if (f.is_fence) {
        if (f.info.empty()) {
          --depth;
          if (depth == 0) break;
        } else {
          ++depth;
        }
      }
      content.push_back(lines[j]);
    }

    std::optional<std::string> name;
    if (i >= 1) name = filename_hint(lines[i - 1]);
    if (!name && i >= 2 && trim(lines[i - 1]).empty()) {
      name = filename_hint(lines[i - 2]);
    }

    CodeArtifact artifact;
    artifact.filename = name.value_or("artifact_" + std::to_string(ordinal));
    std::string body;
    for (std::size_t k = 0; k < content.size(); ++k) {
      if (k > 0) body += "\n";
      body += content[k];
    }
    artifact.content = std::move(body);
    artifacts.push_back(std::move(artifact));

    i = (j < lines.size()) ? j + 1 : j;
  }
  return artifacts;
}

}  // namespace qot
