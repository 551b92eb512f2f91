#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mefkit {

// Every failure the library can signal. Validation helpers that collect
// defects instead of throwing reuse the same codes.
enum class ErrorCode {
  InvalidArgument,
  IndexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  SquareBoundaryMissing,
  ResolutionTooSmall,
  NotASubset,
  ComplexMismatch,
  NotRealValued,
  InvalidPartition,
  InvalidQuotient,
  DimensionMismatch,
  NotSurjective,
  AdjacencyViolation,
  EdgeNotInImage,
  CodomainTooLargeForExhaustive,
  NotAutomorphism,
  NotEquivariant,
  GridMismatch,
  EmptyDeltas,
  FrequencyTooHigh,
  TheoremViolation,
  NotAHomomorphism,
  FiniteGroupTooLarge,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, ErrorCode code, const std::string& message) {
  if (!ok) fail(code, message);
}

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SquareBoundaryMissing: return "SquareBoundaryMissing";
    case ErrorCode::ResolutionTooSmall: return "ResolutionTooSmall";
    case ErrorCode::NotASubset: return "NotASubset";
    case ErrorCode::ComplexMismatch: return "ComplexMismatch";
    case ErrorCode::NotRealValued: return "NotRealValued";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidQuotient: return "InvalidQuotient";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::AdjacencyViolation: return "AdjacencyViolation";
    case ErrorCode::EdgeNotInImage: return "EdgeNotInImage";
    case ErrorCode::CodomainTooLargeForExhaustive:
      return "CodomainTooLargeForExhaustive";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotEquivariant: return "NotEquivariant";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::EmptyDeltas: return "EmptyDeltas";
    case ErrorCode::FrequencyTooHigh: return "FrequencyTooHigh";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::FiniteGroupTooLarge: return "FiniteGroupTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace mefkit
