#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sfg {

enum class ErrorCode {
  kParse,                  // malformed input text or structure
  kUnknownNode,            // branch endpoint not declared
  kDuplicateNode,
  kAmbiguousTerminal,      // input/output not designated and not inferable
  kInvalidArgument,
  kPrecondition,           // operation called on a graph in the wrong state
  kAlreadyClosed,
  kDegreeOverflow,
  kLoopLimit,
  kNoForwardPath,
  kDegenerateDenominator,
  kSingularAtSample,
  kEvaluationAtPole,
  kSingularQuotient,
  kSymbolicInput,          // numeric-only analysis given a symbolic transfer
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sfg
