#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace randers {

enum class ErrorCode {
  InvalidInput,
  InfeasibleParams,
  NotKvfAdmissible,
  NotApplicable,
  BranchUndefined,
  TrackingFailed,
  ResolutionTooCoarse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace randers
