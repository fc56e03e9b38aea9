#pragma once

#include <stdexcept>
#include <string>

namespace minsos {

enum class ErrorKind {
  InputError,
  ExponentOverflow,
  DegreeMismatch,
  UnsupportedDegree,
  NotAScroll,
  NotAQuadraticForm,
  DimensionMismatch,
  NonSymmetric,
  NotInFiber,
  RankTooLarge,
  PathFailureBudgetExceeded,
  OddDiagonalDegree,
  OffDiagonalDegreeMismatch,
  IterationBudgetExceeded,
  StuckAboveTarget,
  NotPSD,
  NotNonnegative,
  ApexCoefficientNotPositive,
  VerificationFailed,
};

const char* to_string(ErrorKind kind);

// Every recoverable failure of the library is reported as an Error carrying
// one of the named kinds above; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InputError: return "InputError";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::NotAScroll: return "NotAScroll";
    case ErrorKind::NotAQuadraticForm: return "NotAQuadraticForm";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::NotInFiber: return "NotInFiber";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::PathFailureBudgetExceeded: return "PathFailureBudgetExceeded";
    case ErrorKind::OddDiagonalDegree: return "OddDiagonalDegree";
    case ErrorKind::OffDiagonalDegreeMismatch: return "OffDiagonalDegreeMismatch";
    case ErrorKind::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorKind::StuckAboveTarget: return "StuckAboveTarget";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotNonnegative: return "NotNonnegative";
    case ErrorKind::ApexCoefficientNotPositive: return "ApexCoefficientNotPositive";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace minsos
