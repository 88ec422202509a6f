#include "partreg/error.hpp"

namespace partreg {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "E_SYNTAX";
    case ErrorCode::kBadExponent: return "E_BAD_EXPONENT";
    case ErrorCode::kDuplicateId: return "E_DUPLICATE_ID";
    case ErrorCode::kIo: return "E_IO";
    case ErrorCode::kUnboundVar: return "E_UNBOUND_VAR";
    case ErrorCode::kZeroPoly: return "E_ZERO_POLY";
    case ErrorCode::kNotLinear: return "E_NOT_LINEAR";
    case ErrorCode::kConstTerm: return "E_CONST_TERM";
    case ErrorCode::kZeroCoeff: return "E_ZERO_COEFF";
    case ErrorCode::kTooManyVars: return "E_TOO_MANY_VARS";
    case ErrorCode::kCoeffRange: return "E_COEFF_RANGE";
    case ErrorCode::kSharedVars: return "E_SHARED_VARS";
    case ErrorCode::kNotHomogeneous: return "E_NOT_HOMOGENEOUS";
    case ErrorCode::kNoEvidence: return "E_NO_EVIDENCE";
    case ErrorCode::kBaseNotPr: return "E_BASE_NOT_PR";
    case ErrorCode::kLiftGuard: return "E_LIFT_GUARD";
    case ErrorCode::kLiftSpec: return "E_LIFT_SPEC";
    case ErrorCode::kVarClash: return "E_VAR_CLASH";
    case ErrorCode::kNotASolution: return "E_NOT_A_SOLUTION";
    case ErrorCode::kZeroAnchor: return "E_ZERO_ANCHOR";
    case ErrorCode::kNonpositive: return "E_NONPOSITIVE";
    case ErrorCode::kBadFactorization: return "E_BAD_FACTORIZATION";
    case ErrorCode::kBadCertificate: return "E_BAD_CERTIFICATE";
    case ErrorCode::kLimit: return "E_LIMIT";
    case ErrorCode::kStandardLeft: return "E_STANDARD_LEFT";
    case ErrorCode::kNoDecomposition: return "E_NO_DECOMPOSITION";
    case ErrorCode::kNonlinearOrder: return "E_NONLINEAR_ORDER";
    case ErrorCode::kHypothesis: return "E_HYPOTHESIS";
    case ErrorCode::kUnboundAtom: return "E_UNBOUND_ATOM";
    case ErrorCode::kUsage: return "E_USAGE";
  }
  return "E_UNKNOWN";
}

}  // namespace partreg
