#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fermatfree {

enum class ErrorKind {
  NonPrime,
  ReducibleModulus,
  SpecMismatch,
  DivisionByZero,
  NoEmbedding,
  NotFound,
  Unsupported,
  DegreeMismatch,
  BothZero,
  NotDivisible,
  NotCharPower,
  NotOnX,
  NotPrimitive,
  Constant,
  WrongArity,
  DegreeTooSmall,
  NotCoprime,
  InternalInconsistency,
  NotFree,
  NotHyperplaneCase,
  NotPrimePower,
  BudgetExceeded,
  NotSeparable,
  InvariantViolation,
  Parse,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrime: return "NonPrime";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NotCharPower: return "NotCharPower";
    case ErrorKind::NotOnX: return "NotOnX";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::Constant: return "Constant";
    case ErrorKind::WrongArity: return "WrongArity";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::NotHyperplaneCase: return "NotHyperplaneCase";
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotSeparable: return "NotSeparable";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

/// Domain error raised by every module. The kind is stable and is what tests
/// and the CLI dispatch on; the message carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fermatfree
