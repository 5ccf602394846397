#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qot/types.hpp"

namespace qot {

/// Prompt text with {name} placeholders, one body section per chat role.
/// Placeholders are {identifier} only; any other brace sequence is literal
/// text. Every placeholder in the body is required at render time.
struct PromptTemplate {
  std::string template_id;
  std::vector<Role> role_layout;
  std::vector<std::string> sections;  // parallel to role_layout
  std::set<std::string> required_placeholders;

  /// Parses template file text. Sections start at lines `[[system]]`,
  /// `[[user]]` or `[[assistant]]`; text before any marker is a user section.
  static PromptTemplate parse(std::string id, const std::string& text);
};

inline constexpr const char* kTplQotSteps = "qot_steps";
inline constexpr const char* kTplQotQuestions = "qot_questions";
inline constexpr const char* kTplQotAnswer = "qot_answer";
inline constexpr const char* kTplQotSynthesize = "qot_synthesize";
inline constexpr const char* kTplNoQotDirect = "noqot_direct";
inline constexpr const char* kTplCotDirect = "cot_direct";
inline constexpr const char* kTplJudgeRubric = "judge_rubric";

class TemplateRegistry {
 public:
  /// The seven shipped templates, embedded at build time from templates/.
  static TemplateRegistry builtin();

  /// Overrides (or adds) templates from <id>.txt files in a directory.
  void load_dir(const std::filesystem::path& dir);

  void put(PromptTemplate tpl);
  const PromptTemplate& get(const std::string& template_id) const;  // throws UnknownTemplate
  bool contains(const std::string& template_id) const;

 private:
  std::map<std::string, PromptTemplate> templates_;
};

/// Deterministic single-pass substitution: bound values are inserted
/// literally and never re-expanded. Throws MissingPlaceholder when a
/// placeholder in the body has no binding, TemplateError when the result
/// violates ChatRequest invariants.
ChatRequest render(const PromptTemplate& tpl,
                   const std::map<std::string, std::string>& bindings,
                   const std::string& model_name, double temperature,
                   std::optional<long long> seed = std::nullopt);

}  // namespace qot
