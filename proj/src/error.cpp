#include "sfg/error.hpp"

namespace sfg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kUnknownNode: return "unknown_node";
    case ErrorCode::kDuplicateNode: return "duplicate_node";
    case ErrorCode::kAmbiguousTerminal: return "ambiguous_terminal";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kAlreadyClosed: return "already_closed";
    case ErrorCode::kDegreeOverflow: return "degree_overflow";
    case ErrorCode::kLoopLimit: return "loop_limit";
    case ErrorCode::kNoForwardPath: return "no_forward_path";
    case ErrorCode::kDegenerateDenominator: return "degenerate_denominator";
    case ErrorCode::kSingularAtSample: return "singular_at_sample";
    case ErrorCode::kEvaluationAtPole: return "evaluation_at_pole";
    case ErrorCode::kSingularQuotient: return "singular_quotient";
    case ErrorCode::kSymbolicInput: return "symbolic_input";
  }
  return "unknown";
}

}  // namespace sfg
