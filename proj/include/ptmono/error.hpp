#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptmono {

enum class ErrorCode {
  NonHermitianInput,
  ConvergenceFailure,
  DimensionMismatch,
  NonFiniteInput,
  InvalidState,
  LengthMismatch,
  NegativeEntry,
  InvalidOrder,
  NotSquare,
  NotIsometry,
  RankMismatch,
  InvalidDimension,
  InvalidFidelity,
  InvalidConfig,
  TruncationInadequate,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitianInput: return "NonHermitianInput";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidFidelity: return "InvalidFidelity";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::TruncationInadequate: return "TruncationInadequate";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ptmono
