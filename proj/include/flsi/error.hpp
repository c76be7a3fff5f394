#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flsi {

enum class ErrorCode {
  DimensionInvalid,
  ExponentInvalid,
  OrderInvalid,
  SubcriticalityViolated,
  QOutOfRange,
  WeightInvalid,
  NonPositiveArgument,
  Unavailable,
  ZeroFunction,
  NonFiniteIntegrand,
  ToleranceNotReached,
  BudgetExhausted,
  WeightSingularityUnresolved,
  UnsupportedDimension,
  UnsupportedExponent,
  UnsupportedProfile,
  NormalizationMissing,
  GradientUnavailable,
  LogDomain,
  InputInvalid,
  ExponentOrderInvalid,
  SchemaError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exit status a CLI run reports when this error escapes.
/// 1: an inequality could not hold, 2: numerical failure, 3: invalid input.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message, std::string path = {})
      : std::runtime_error(compose(code, message, path)),
        code_(code), message_(std::move(message)), path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  /// JSON path of the offending config field, empty when not config-related.
  const std::string& path() const noexcept { return path_; }

private:
  static std::string compose(ErrorCode code, const std::string& message,
                             const std::string& path);

  ErrorCode code_;
  std::string message_;
  std::string path_;
};

} // namespace flsi
