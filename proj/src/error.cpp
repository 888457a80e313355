#include "error.hpp"

namespace nlcflow {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kCflViolation: return "CflViolation";
    case ErrorCode::kLinearSolveFailure: return "LinearSolveFailure";
    case ErrorCode::kIncompatibleRhs: return "IncompatibleRhs";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kDegenerateFit: return "DegenerateFit";
    case ErrorCode::kMaxIterations: return "MaxIterations";
    case ErrorCode::kStepRejected: return "StepRejected";
    case ErrorCode::kOrderRegression: return "OrderRegression";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace nlcflow
