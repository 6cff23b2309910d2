#pragma once

#include <stdexcept>
#include <string>

namespace surfrec {

enum class ErrorCode {
  EmptyInput,
  DuplicatePoints,
  TooFewPoints,
  RankOutOfRange,
  OrderingStalled,
  SingularSystem,
  AmbiguousOrientation,
  CurveTooShort,
  RegionEmpty,
  NotEnoughNodes,
  SingularStencil,
  SolverDiverged,
  BoundaryCollision,
  SelfIntersection,
  IoFailure,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

/// Library-wide exception; carries a stable machine-readable code plus a
/// human-readable message. The CLI maps the code name to its exit status line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace surfrec
