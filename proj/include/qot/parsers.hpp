#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qot/result.hpp"
#include "qot/types.hpp"

namespace qot {

/// Typed, non-throwing parser failure. Parsers are total over arbitrary text.
struct ParseError {
  enum class Kind {
    StepParseFailure,
    QuestionParseFailure,
    ScoreParseFailure,
    ScoreOutOfRange,
  };

  Kind kind = Kind::StepParseFailure;
  std::string message;
  std::string label;      // score errors: offending method label
  std::string dimension;  // ScoreOutOfRange: offending dimension
  std::optional<double> value;  // ScoreOutOfRange: offending value
};

std::string to_string(ParseError::Kind k);

template <class T>
using ParseResult = Result<T, ParseError>;

/// Turns a completion into a step plan. Primary path: first JSON array in the
/// text whose elements are strings or {title, description} objects. Fallback:
/// numbered lines ("1. ..." / "1) ..."). Indices follow order of appearance.
ParseResult<StepPlan> parse_steps(const std::string& completion,
                                  const std::string& objective_id = "");

/// Same dual-path parse for a step's self-questions; question_index assigned
/// 1..m in appearance order.
ParseResult<QaChain> parse_questions(const std::string& completion, int step_index);

/// Extracts per-label rubric scores from a JSON object of shape
/// {label: {"scalability": n, "completeness": n, "modularity": n, "security": n}}.
/// Every expected label must be present and every dimension an integer in [1, 4].
ParseResult<std::map<std::string, RubricScore>> parse_score_block(
    const std::string& completion, const std::set<std::string>& expected_labels);

/// Fenced code blocks in order. A fence line with an info string opens a
/// block (or nests inside one); a bare ``` closes one level, so the outermost
/// fence wins and nested fence lines are preserved verbatim. The filename
/// comes from a hint line immediately above the fence when it looks like a
/// file name, else artifact_<k> with k the 1-based block ordinal.
std::vector<CodeArtifact> extract_code_artifacts(const std::string& completion);

}  // namespace qot
