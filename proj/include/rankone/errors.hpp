#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankone {

enum class ErrorCode {
  kDuplicateNodes,
  kZeroPolynomial,
  kNotRegular,
  kStructureInconsistent,
  kNotEigenvalue,
  kIllConditioned,
  kNotRankOne,
  kNotDegenerate,
  kDegreeTooHigh,
  kNumericallySingular,
  kBudgetMismatch,
  kVerificationFailed,
  kPreconditionViolated,
  kTotalMismatch,
  kHypothesisViolated,
  kInfinityForbidden,
  kInvalidInput,
};

/// Stable identifier used in reports, e.g. "BudgetMismatch".
std::string_view to_string(ErrorCode code);

/// All library failures are reported through this exception type; the code
/// identifies which precondition or numerical check failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rankone
