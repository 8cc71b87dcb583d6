#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thompson {

enum class ErrorCode {
  CyclicGraph,
  DanglingPort,
  BoundaryMismatch,
  ArityMismatch,
  ParseError,
  AlphabetError,
  StaleRedex,
  NotReduced,
  StructureViolation,
  CutoffExceeded,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CyclicGraph: return "CyclicGraph";
    case ErrorCode::DanglingPort: return "DanglingPort";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AlphabetError: return "AlphabetError";
    case ErrorCode::StaleRedex: return "StaleRedex";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::CutoffExceeded: return "CutoffExceeded";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for errors caused by user input (bad words, wrong alphabet, arity).
  bool is_user_error() const noexcept {
    return code_ == ErrorCode::ParseError || code_ == ErrorCode::AlphabetError ||
           code_ == ErrorCode::ArityMismatch;
  }

 private:
  ErrorCode code_;
};

}  // namespace thompson
