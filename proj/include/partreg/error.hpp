#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace partreg {

enum class ErrorCode {
  kSyntax,
  kBadExponent,
  kDuplicateId,
  kIo,
  kUnboundVar,
  kZeroPoly,
  kNotLinear,
  kConstTerm,
  kZeroCoeff,
  kTooManyVars,
  kCoeffRange,
  kSharedVars,
  kNotHomogeneous,
  kNoEvidence,
  kBaseNotPr,
  kLiftGuard,
  kLiftSpec,
  kVarClash,
  kNotASolution,
  kZeroAnchor,
  kNonpositive,
  kBadFactorization,
  kBadCertificate,
  kLimit,
  kStandardLeft,
  kNoDecomposition,
  kNonlinearOrder,
  kHypothesis,
  kUnboundAtom,
  kUsage,
};

/// Stable wire name of an error code, e.g. "E_SYNTAX".
std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace partreg
