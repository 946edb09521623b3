#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chpeakon {

enum class ErrorCode {
  // input validation
  NonIncreasingPositions,
  NegativeDipole,
  NullAtom,
  LengthMismatch,
  InvalidSpectralData,
  DipolePresent,
  CoincidentPositions,
  InvalidArgument,
  ParseError,
  // numerical failures
  RootIsolationFailure,
  CrossCheckFailure,
  PoleHit,
  DivisionByZeroInFraction,
  ConsecutiveZeros,
  NonPositiveHankel,
  LogDomainError,
  OrderingViolation,
  WindowDerivationFailure,
  ExtrapolationUnstable,
  StepSizeUnderflow,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIncreasingPositions: return "NonIncreasingPositions";
    case ErrorCode::NegativeDipole: return "NegativeDipole";
    case ErrorCode::NullAtom: return "NullAtom";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::InvalidSpectralData: return "InvalidSpectralData";
    case ErrorCode::DipolePresent: return "DipolePresent";
    case ErrorCode::CoincidentPositions: return "CoincidentPositions";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RootIsolationFailure: return "RootIsolationFailure";
    case ErrorCode::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::DivisionByZeroInFraction: return "DivisionByZeroInFraction";
    case ErrorCode::ConsecutiveZeros: return "ConsecutiveZeros";
    case ErrorCode::NonPositiveHankel: return "NonPositiveHankel";
    case ErrorCode::LogDomainError: return "LogDomainError";
    case ErrorCode::OrderingViolation: return "OrderingViolation";
    case ErrorCode::WindowDerivationFailure: return "WindowDerivationFailure";
    case ErrorCode::ExtrapolationUnstable: return "ExtrapolationUnstable";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
  }
  return "Unknown";
}

/// True for errors caused by bad input rather than by the numerics.
constexpr bool is_validation_error(ErrorCode code) {
  return code <= ErrorCode::ParseError;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace chpeakon
