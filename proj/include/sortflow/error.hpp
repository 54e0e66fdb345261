#pragma once

#include <stdexcept>
#include <string>

namespace sortflow {

enum class ErrorCode {
  InvalidVertex,
  SourceEqualsSink,
  SelfLoop,
  CapacityOverflow,
  NonPositiveDelta,
  ResidualExceeded,
  NonTerminatingPush,
  RestorationFailed,
  TooLarge,
  SourceReachedSink,
  InvalidProfile,
  InvalidArgument,
  SyntaxError,
  DuplicateProblemLine,
  MissingSourceOrSink,
  ArcCountMismatch,
};

const char* to_string(ErrorCode code) noexcept;

class FlowError : public std::runtime_error {
 public:
  FlowError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sortflow
