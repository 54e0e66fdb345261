#include "sortflow/error.hpp"

namespace sortflow {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::SourceEqualsSink: return "SourceEqualsSink";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::CapacityOverflow: return "CapacityOverflow";
    case ErrorCode::NonPositiveDelta: return "NonPositiveDelta";
    case ErrorCode::ResidualExceeded: return "ResidualExceeded";
    case ErrorCode::NonTerminatingPush: return "NonTerminatingPush";
    case ErrorCode::RestorationFailed: return "RestorationFailed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SourceReachedSink: return "SourceReachedSink";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateProblemLine: return "DuplicateProblemLine";
    case ErrorCode::MissingSourceOrSink: return "MissingSourceOrSink";
    case ErrorCode::ArcCountMismatch: return "ArcCountMismatch";
  }
  return "Unknown";
}

}  // namespace sortflow
