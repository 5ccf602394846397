#pragma once

#include <stdexcept>
#include <string>

namespace qot {

/// Base for misuse and configuration errors. Pipeline-level failures
/// (parse/transport) travel as values, not exceptions.
struct QotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MismatchedChains : QotError {
  using QotError::QotError;
};

struct MissingPlaceholder : QotError {
  explicit MissingPlaceholder(std::string name)
      : QotError("missing placeholder: " + name), placeholder(std::move(name)) {}
  std::string placeholder;
};

struct UnknownTemplate : QotError {
  using QotError::QotError;
};

struct TemplateError : QotError {
  using QotError::QotError;
};

struct ScriptExhausted : QotError {
  using QotError::QotError;
};

struct ScriptMismatch : QotError {
  using QotError::QotError;
};

struct InvalidShape : QotError {
  using QotError::QotError;
};

struct TooManyMethods : QotError {
  using QotError::QotError;
};

struct MissingPrior : QotError {
  using QotError::QotError;
};

struct RoundMismatch : QotError {
  using QotError::QotError;
};

struct UnpairedRuns : QotError {
  using QotError::QotError;
};

struct EmptyInput : QotError {
  using QotError::QotError;
};

struct NonPositiveBaseline : QotError {
  using QotError::QotError;
};

struct NoScoredRounds : QotError {
  using QotError::QotError;
};

struct ConfigError : QotError {
  ConfigError(std::string field_name, const std::string& what)
      : QotError("config field '" + field_name + "': " + what),
        field(std::move(field_name)) {}
  std::string field;
};

}  // namespace qot
