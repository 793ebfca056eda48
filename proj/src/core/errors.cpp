#include "expthresh/errors.hpp"

namespace expthresh {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::materialization_too_large: return "MaterializationTooLarge";
    case ErrorCode::witness_search_inconclusive: return "WitnessSearchInconclusive";
    case ErrorCode::indeterminate_at_precision: return "IndeterminateAtPrecision";
    case ErrorCode::no_root: return "NoRoot";
    case ErrorCode::precondition_violated: return "PreconditionViolated";
    case ErrorCode::empty_family: return "EmptyFamily";
    case ErrorCode::degenerate_threshold: return "DegenerateThreshold";
    case ErrorCode::retries_exhausted: return "RetriesExhausted";
    case ErrorCode::width_cap_exceeded: return "WidthCapExceeded";
    case ErrorCode::inner_certificate_invalid: return "InnerCertificateInvalid";
    case ErrorCode::degenerate_pivot_limit: return "DegeneratePivotLimit";
    case ErrorCode::small_jr_branch: return "SmallJrBranch";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace expthresh
