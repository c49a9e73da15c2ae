#include "mav/grid.h"

#include <algorithm>
#include <cmath>

namespace mav {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonPositiveImaginaryPart: return "NonPositiveImaginaryPart";
    case ErrorCode::BadGridSize: return "BadGridSize";
    case ErrorCode::NonZeroMean: return "NonZeroMean";
    case ErrorCode::RankNotTwo: return "RankNotTwo";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::LinearSolveFailure: return "LinearSolveFailure";
    case ErrorCode::DampingFloor: return "DampingFloor";
    case ErrorCode::StabilityGate: return "StabilityGate";
    case ErrorCode::StepFloorReached: return "StepFloorReached";
    case ErrorCode::MonitorViolation: return "MonitorViolation";
    case ErrorCode::SolvabilityFailure: return "SolvabilityFailure";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
  }
  return "UnknownError";
}

int error_exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonPositiveImaginaryPart:
    case ErrorCode::BadGridSize:
    case ErrorCode::NonZeroMean:
    case ErrorCode::RankNotTwo:
    case ErrorCode::GridMismatch:
    case ErrorCode::ConfigParseError:
    case ErrorCode::SchemaMismatch:
    case ErrorCode::DimensionOutOfRange:
      return 2;
    default:
      return 1;
  }
}

TorusGrid make_grid(cplx tau, int n) {
  if (!(tau.imag() > 0.0))
    throw MavError(ErrorCode::NonPositiveImaginaryPart,
                   "tau must satisfy Im(tau) > 0, got Im = " + std::to_string(tau.imag()));
  bool pow2 = n >= 8 && (n & (n - 1)) == 0;
  if (!pow2)
    throw MavError(ErrorCode::BadGridSize,
                   "grid size must be a power of two >= 8, got " + std::to_string(n));
  return TorusGrid{tau, n};
}

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* where) {
  if (!(a == b))
    throw MavError(ErrorCode::GridMismatch, std::string(where) + ": fields live on different grids");
}

// Kahan summation: degree integrals are compared at 1e-10 and a plain
// accumulator already drifts past that around n=256.
static double kahan_total(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

double integrate(const Density11& f) { return kahan_total(f.v) * f.grid.cell_area(); }
double integrate(const ScalarField& f) { return kahan_total(f.v) * f.grid.cell_area(); }

double field_min(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double field_max(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

} // namespace mav
