#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoil {

enum class ErrorCode {
  SyntaxError,
  TypeError,
  KindError,
  StrictTypeError,
  ArithmeticError,
  ConstructionError,
  MembershipError,
  IndexError,
  ConflictError,
  RangeError,
  UnmappableParameter,
  UnknownProcedure,
  ArityMismatch,
  ParameterMismatch,
  ReturnContract,
  DuplicateRegistration,
  UnknownIdentifier,
  UnknownDimension,
  UnboundDimension,
  TagSetViolation,
  UndefinedKind,
  UsageError,
  IoError,
};

/// Kebab-case code name as printed in diagnostics, e.g. "strict-type-error".
std::string_view error_code_name(ErrorCode code);

struct SourcePos {
  int line = 0;
  int col = 0;
  bool valid() const { return line > 0; }
};

struct Diagnostic {
  std::string severity = "error";
  std::string file;
  SourcePos pos;
  std::string message;
  ErrorCode code = ErrorCode::TypeError;

  /// `severity: file:line:col: message (code)`; position segment omitted when unknown.
  std::string format(bool color = false) const;
};

/// Library-level failure. Source position is attached by the evaluator or
/// parser where one is known; pure value operations throw without one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Error(ErrorCode code, std::string message, SourcePos pos)
      : std::runtime_error(std::move(message)), code_(code), pos_(pos) {}

  ErrorCode code() const { return code_; }
  const std::optional<SourcePos>& pos() const { return pos_; }

  Diagnostic to_diagnostic(const std::string& file) const;

 private:
  ErrorCode code_;
  std::optional<SourcePos> pos_;
};

}  // namespace hoil
