#pragma once
#include <stdexcept>
#include <string>

namespace mav {

enum class ErrorCode {
  NonPositiveImaginaryPart,
  BadGridSize,
  NonZeroMean,
  RankNotTwo,
  GridMismatch,
  LinearSolveFailure,
  DampingFloor,
  StabilityGate,
  StepFloorReached,
  MonitorViolation,
  SolvabilityFailure,
  ConfigParseError,
  SchemaMismatch,
  DimensionOutOfRange,
};

const char* error_name(ErrorCode c);

// 2 = bad input, 1 = solver/runtime failure (per the CLI exit-code contract)
int error_exit_code(ErrorCode c);

class MavError : public std::runtime_error {
public:
  MavError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

} // namespace mav
