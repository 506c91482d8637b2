#pragma once

#include <stdexcept>
#include <string>

namespace unirat {

enum class ErrorCode {
  UniverseMismatch,
  FieldMismatch,
  UnknownVariable,
  DivisionByZero,
  Inseparable,
  BudgetExceeded,
  NotAlgebraic,
  ParseError,
  IntegrityFailure,
  InvalidArgument,
  Unsupported,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::UniverseMismatch: return "UNIVERSE_MISMATCH";
    case ErrorCode::FieldMismatch: return "FIELD_MISMATCH";
    case ErrorCode::UnknownVariable: return "UNKNOWN_VARIABLE";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::Inseparable: return "INSEPARABLE";
    case ErrorCode::BudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::NotAlgebraic: return "NOT_ALGEBRAIC";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::IntegrityFailure: return "INTEGRITY_FAILURE";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(ErrorCode::ParseError,
              std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_, column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace unirat
