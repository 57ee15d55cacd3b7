#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ws1s {

enum class ErrorCode {
  kSyntax,
  kKind,
  kBinding,
  kUnboundVariable,
  kUnboundTrack,
  kTrackKindConflict,
  kUnknownTrack,
  kArityMismatch,
  kStateBudgetExceeded,
  kEnumerationBudgetExceeded,
  kUnassignedVariable,
  kModeDisagreement,
  kInvalidArgument,
  kIo,
  kInternal,
};

const char* error_code_name(ErrorCode code);

// Every failure raised by the library is an Error carrying a code, so the C
// boundary can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(ErrorCode code, std::size_t limit, const std::string& what);

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

}  // namespace ws1s
