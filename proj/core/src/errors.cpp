#include "algebroid/errors.hpp"

namespace algebroid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSolverDiverged: return "SolverDiverged";
    case ErrorCode::kInexactDivision: return "InexactDivision";
    case ErrorCode::kPoleAtPoint: return "PoleAtPoint";
    case ErrorCode::kRootOnBoundary: return "RootOnBoundary";
    case ErrorCode::kIdenticallyZero: return "IdenticallyZero";
    case ErrorCode::kPathTooClose: return "PathTooClose";
    case ErrorCode::kTrackingAmbiguous: return "TrackingAmbiguous";
    case ErrorCode::kCriticalPointsTooClose: return "CriticalPointsTooClose";
    case ErrorCode::kFitIllConditioned: return "FitIllConditioned";
    case ErrorCode::kBoundaryHitsCritical: return "BoundaryHitsCritical";
    case ErrorCode::kValueAtReference: return "ValueAtReference";
    case ErrorCode::kParabolicProfile: return "ParabolicProfile";
    case ErrorCode::kNotABranchPoint: return "NotABranchPoint";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

Error with_context(const Error& error, const std::string& context) {
  return Error(error.code(), error.detail() + " (" + context + ")");
}

}  // namespace algebroid
