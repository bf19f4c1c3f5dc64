#include "hoil/diagnostics.hpp"

namespace hoil {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "syntax-error";
    case ErrorCode::TypeError: return "type-error";
    case ErrorCode::KindError: return "kind-error";
    case ErrorCode::StrictTypeError: return "strict-type-error";
    case ErrorCode::ArithmeticError: return "arithmetic-error";
    case ErrorCode::ConstructionError: return "construction-error";
    case ErrorCode::MembershipError: return "membership-error";
    case ErrorCode::IndexError: return "index-error";
    case ErrorCode::ConflictError: return "conflict-error";
    case ErrorCode::RangeError: return "range-error";
    case ErrorCode::UnmappableParameter: return "unmappable-parameter";
    case ErrorCode::UnknownProcedure: return "unknown-procedure";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::ParameterMismatch: return "parameter-mismatch";
    case ErrorCode::ReturnContract: return "return-contract";
    case ErrorCode::DuplicateRegistration: return "duplicate-registration";
    case ErrorCode::UnknownIdentifier: return "unknown-identifier";
    case ErrorCode::UnknownDimension: return "unknown-dimension";
    case ErrorCode::UnboundDimension: return "unbound-dimension";
    case ErrorCode::TagSetViolation: return "tag-set-violation";
    case ErrorCode::UndefinedKind: return "undefined-kind";
    case ErrorCode::UsageError: return "usage-error";
    case ErrorCode::IoError: return "io-error";
  }
  return "error";
}

std::string Diagnostic::format(bool color) const {
  std::string out;
  if (color) out += severity == "error" ? "\x1b[31m" : "\x1b[33m";
  out += severity;
  if (color) out += "\x1b[0m";
  out += ": ";
  if (!file.empty()) {
    out += file;
    if (pos.valid()) {
      out += ':' + std::to_string(pos.line) + ':' + std::to_string(pos.col);
    }
    out += ": ";
  }
  out += message;
  out += " (";
  out += error_code_name(code);
  out += ')';
  return out;
}

Diagnostic Error::to_diagnostic(const std::string& file) const {
  Diagnostic d;
  d.file = file;
  if (pos_) d.pos = *pos_;
  d.message = what();
  d.code = code_;
  return d;
}

}  // namespace hoil
