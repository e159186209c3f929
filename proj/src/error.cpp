#include "alnram/error.hpp"

namespace alnram {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ForwardReference: return "ForwardReference";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::DanglingLabel: return "DanglingLabel";
    case ErrorKind::GateViolation: return "GateViolation";
    case ErrorKind::StepBudgetExhausted: return "StepBudgetExhausted";
    case ErrorKind::UnsupportedOp: return "UnsupportedOp";
    case ErrorKind::MissingTransition: return "MissingTransition";
    case ErrorKind::MalformedDescription: return "MalformedDescription";
    case ErrorKind::InputTooWide: return "InputTooWide";
    case ErrorKind::UnsupportedProgram: return "UnsupportedProgram";
    case ErrorKind::WidthViolation: return "WidthViolation";
    case ErrorKind::NotAccepting: return "NotAccepting";
    case ErrorKind::IterationBudgetExhausted: return "IterationBudgetExhausted";
    case ErrorKind::SchemeConstraint: return "SchemeConstraint";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace alnram
