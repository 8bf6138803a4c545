#pragma once

#include <stdexcept>
#include <string>

namespace loopfluct {

enum class ErrorCode {
  InvalidInput,
  DegenerateHull,
  EmptyRegion,
  InconsistentHull,
  Resource,
  InitFailure,
  Io,
  InvariantViolation,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure reported by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::DegenerateHull: return "degenerate-hull";
    case ErrorCode::EmptyRegion: return "empty-region";
    case ErrorCode::InconsistentHull: return "inconsistent-hull";
    case ErrorCode::Resource: return "resource";
    case ErrorCode::InitFailure: return "init-failure";
    case ErrorCode::Io: return "io";
    case ErrorCode::InvariantViolation: return "invariant-violation";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::InvalidInput, what);
}

}  // namespace loopfluct
