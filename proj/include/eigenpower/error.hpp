#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eigenpower {

enum class ErrorCode {
  kNotSquare,
  kNotHermitian,
  kConvergenceFailure,
  kSingularMatrix,
  kTooManyQubits,
  kDimensionMismatch,
  kNotUnitary,
  kOverlappingRegisters,
  kLayoutMismatch,
  kOutOfBound,
  kCapacityExceeded,
  kExhaustedRedraws,
  kFlagsAlreadySet,
  kDenominatorTooSmall,
  kIllConditionedKrylov,
  kZeroVector,
  kInvalidConfig,
  kFileNotFound,
  kParseError,
  kBadParams,
  kIoError,
};

// Stable identifier used in error JSON, e.g. "NotHermitian".
std::string_view error_name(ErrorCode code);

// Process exit code class: 2 I/O, 3 validation, 4 numeric, 5 shot noise.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace eigenpower
