#include "eigenpower/error.hpp"

namespace eigenpower {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kTooManyQubits: return "TooManyQubits";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kOverlappingRegisters: return "OverlappingRegisters";
    case ErrorCode::kLayoutMismatch: return "LayoutMismatch";
    case ErrorCode::kOutOfBound: return "OutOfBound";
    case ErrorCode::kCapacityExceeded: return "CapacityExceeded";
    case ErrorCode::kExhaustedRedraws: return "ExhaustedRedraws";
    case ErrorCode::kFlagsAlreadySet: return "FlagsAlreadySet";
    case ErrorCode::kDenominatorTooSmall: return "DenominatorTooSmall";
    case ErrorCode::kIllConditionedKrylov: return "IllConditionedKrylov";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound:
    case ErrorCode::kIoError:
      return 2;
    case ErrorCode::kNotSquare:
    case ErrorCode::kNotHermitian:
    case ErrorCode::kTooManyQubits:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNotUnitary:
    case ErrorCode::kOverlappingRegisters:
    case ErrorCode::kLayoutMismatch:
    case ErrorCode::kOutOfBound:
    case ErrorCode::kCapacityExceeded:
    case ErrorCode::kFlagsAlreadySet:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kParseError:
    case ErrorCode::kBadParams:
      return 3;
    case ErrorCode::kConvergenceFailure:
    case ErrorCode::kSingularMatrix:
    case ErrorCode::kExhaustedRedraws:
    case ErrorCode::kIllConditionedKrylov:
    case ErrorCode::kZeroVector:
      return 4;
    case ErrorCode::kDenominatorTooSmall:
      return 5;
  }
  return 4;
}

}  // namespace eigenpower
