#include "ws1s/error.hpp"

#include <sstream>

namespace ws1s {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntax: return "SyntaxError";
    case ErrorCode::kKind: return "KindError";
    case ErrorCode::kBinding: return "BindingError";
    case ErrorCode::kUnboundVariable: return "UnboundVariable";
    case ErrorCode::kUnboundTrack: return "UnboundTrack";
    case ErrorCode::kTrackKindConflict: return "TrackKindConflict";
    case ErrorCode::kUnknownTrack: return "UnknownTrack";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kStateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorCode::kEnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorCode::kUnassignedVariable: return "UnassignedVariable";
    case ErrorCode::kModeDisagreement: return "ModeDisagreement";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "UnknownError";
}

namespace {

std::string syntax_message(std::size_t line, std::size_t column,
                           const std::string& expected) {
  std::ostringstream os;
  os << "syntax error at " << line << ':' << column << ": expected "
     << expected;
  return os.str();
}

std::string budget_message(std::size_t limit, const std::string& what) {
  std::ostringstream os;
  os << what << " exceeded the budget of " << limit;
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::size_t line, std::size_t column,
                         std::string expected)
    : Error(ErrorCode::kSyntax, syntax_message(line, column, expected)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

BudgetExceeded::BudgetExceeded(ErrorCode code, std::size_t limit,
                               const std::string& what)
    : Error(code, budget_message(limit, what)), limit_(limit) {}

}  // namespace ws1s
