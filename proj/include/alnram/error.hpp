#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alnram {

enum class ErrorKind {
  NotExact,
  DivByZero,
  ArityMismatch,
  ParseError,
  ForwardReference,
  BudgetExceeded,
  GenerationFailed,
  DanglingLabel,
  GateViolation,
  StepBudgetExhausted,
  UnsupportedOp,
  MissingTransition,
  MalformedDescription,
  InputTooWide,
  UnsupportedProgram,
  WidthViolation,
  NotAccepting,
  IterationBudgetExhausted,
  SchemeConstraint,
  Usage,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace alnram
