#ifndef DEGEN_ERRORS_HPP
#define DEGEN_ERRORS_HPP

#include <exception>
#include <string>

namespace degen {

/// Every failure mode the library can report. The CLI maps these to exit
/// statuses: parse/consistency problems exit 2, precondition violations 3,
/// precision exhaustion 4, budget exhaustion 5.
enum class ErrCode {
  ParseError,
  ConsistencyError,
  IoError,
  PreconditionViolated,
  MismatchedField,
  DivisionByZero,
  NonpositiveInput,
  ShapeMismatch,
  NotPointed,
  RankTooLarge,
  RankMismatch,
  EmptyInput,
  NonpositiveSlope,
  NegativeGenerator,
  IrrationalityCertificateFailure,
  NotInCone,
  ConeTooLarge,
  LimitDoesNotExist,
  AmbientViolation,
  NoDestabilizingDirection,
  NonincreasingLabels,
  PrecisionExhausted,
  BudgetExceeded,
};

const char* err_name(ErrCode code);
int exit_status(ErrCode code);

class Error : public std::exception {
public:
  Error(ErrCode code, std::string message)
      : code_(code), message_(std::string(err_name(code)) + ": " + std::move(message)) {}

  ErrCode code() const { return code_; }
  const char* what() const noexcept override { return message_.c_str(); }

private:
  ErrCode code_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrCode code, std::string message) {
  throw Error(code, std::move(message));
}

inline const char* err_name(ErrCode code) {
  switch (code) {
    case ErrCode::ParseError: return "ParseError";
    case ErrCode::ConsistencyError: return "ConsistencyError";
    case ErrCode::IoError: return "IoError";
    case ErrCode::PreconditionViolated: return "PreconditionViolated";
    case ErrCode::MismatchedField: return "MismatchedField";
    case ErrCode::DivisionByZero: return "DivisionByZero";
    case ErrCode::NonpositiveInput: return "NonpositiveInput";
    case ErrCode::ShapeMismatch: return "ShapeMismatch";
    case ErrCode::NotPointed: return "NotPointed";
    case ErrCode::RankTooLarge: return "RankTooLarge";
    case ErrCode::RankMismatch: return "RankMismatch";
    case ErrCode::EmptyInput: return "EmptyInput";
    case ErrCode::NonpositiveSlope: return "NonpositiveSlope";
    case ErrCode::NegativeGenerator: return "NegativeGenerator";
    case ErrCode::IrrationalityCertificateFailure: return "IrrationalityCertificateFailure";
    case ErrCode::NotInCone: return "NotInCone";
    case ErrCode::ConeTooLarge: return "ConeTooLarge";
    case ErrCode::LimitDoesNotExist: return "LimitDoesNotExist";
    case ErrCode::AmbientViolation: return "AmbientViolation";
    case ErrCode::NoDestabilizingDirection: return "NoDestabilizingDirection";
    case ErrCode::NonincreasingLabels: return "NonincreasingLabels";
    case ErrCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrCode::BudgetExceeded: return "BudgetExceeded";
  }
  return "UnknownError";
}

inline int exit_status(ErrCode code) {
  switch (code) {
    case ErrCode::ParseError:
    case ErrCode::ConsistencyError:
    case ErrCode::IoError:
    case ErrCode::MismatchedField:
    case ErrCode::ShapeMismatch:
    case ErrCode::RankMismatch:
      return 2;
    case ErrCode::PrecisionExhausted:
      return 4;
    case ErrCode::BudgetExceeded:
      return 5;
    default:
      return 3;
  }
}

}  // namespace degen

#endif
