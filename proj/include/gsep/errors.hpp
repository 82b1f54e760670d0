#pragma once

#include <stdexcept>
#include <string>

namespace gsep {

enum class ErrorCode {
  MalformedRotation,
  IndexOutOfRange,
  NonIntegerGenus,
  DegenerateFace,
  NotACycle,
  ComponentTooSmall,
  OverlappingTreePaths,
  InsideNotPlanar,
  InvariantViolation,
  NotPlanar,
  IterationLimitExceeded,
  ParseError,
  TooSmall,
};

const char* to_string(ErrorCode code);

/// Base error for everything the library throws on a contract violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gsep
