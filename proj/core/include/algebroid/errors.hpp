#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace algebroid {

enum class ErrorCode {
  kInvalidArgument,
  kSolverDiverged,
  kInexactDivision,
  kPoleAtPoint,
  kRootOnBoundary,
  kIdenticallyZero,
  kPathTooClose,
  kTrackingAmbiguous,
  kCriticalPointsTooClose,
  kFitIllConditioned,
  kBoundaryHitsCritical,
  kValueAtReference,
  kParabolicProfile,
  kNotABranchPoint,
  kConfigInvalid,
};

std::string_view to_string(ErrorCode code);

// Every failure surfaced by the library carries one of the codes above so
// that callers (and the CLI) can react to the category, not the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

// Same error with "(context)" appended to the message.
Error with_context(const Error& error, const std::string& context);

}  // namespace algebroid
