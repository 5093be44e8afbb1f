#include "rankone/errors.hpp"

namespace rankone {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateNodes: return "DuplicateNodes";
    case ErrorCode::kZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::kNotRegular: return "NotRegular";
    case ErrorCode::kStructureInconsistent: return "StructureInconsistent";
    case ErrorCode::kNotEigenvalue: return "NotEigenvalue";
    case ErrorCode::kIllConditioned: return "IllConditioned";
    case ErrorCode::kNotRankOne: return "NotRankOne";
    case ErrorCode::kNotDegenerate: return "NotDegenerate";
    case ErrorCode::kDegreeTooHigh: return "DegreeTooHigh";
    case ErrorCode::kNumericallySingular: return "NumericallySingular";
    case ErrorCode::kBudgetMismatch: return "BudgetMismatch";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kTotalMismatch: return "TotalMismatch";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kInfinityForbidden: return "InfinityForbidden";
    case ErrorCode::kInvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace rankone
