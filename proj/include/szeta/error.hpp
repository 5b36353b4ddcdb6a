#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace szeta {

enum class ErrorCode {
  InvalidAngle,
  InvalidConfig,
  DisjointnessViolation,
  CayleyPoleInsideDisc,
  NoConvergence,
  NotContracting,
  NoSignChange,
  MaxIterations,
  ContourNearZero,
  NonIntegerResult,
  ZeroDenominator,
  BracketFailure,
  CacheError,
  ParseError,
};

std::string_view error_name(ErrorCode code);

// Domain failure carrying a stable, machine-readable name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace szeta
