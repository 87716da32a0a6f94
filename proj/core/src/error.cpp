#include "qows/error.hpp"

namespace qows {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::EntryOutOfRange: return "EntryOutOfRange";
    case ErrorCode::RowNotPermutation: return "RowNotPermutation";
    case ErrorCode::ColNotPermutation: return "ColNotPermutation";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::OrderNotSupported: return "OrderNotSupported";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::EmptyString: return "EmptyString";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IndexLeaderOutOfRange: return "IndexLeaderOutOfRange";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::SyntaxError: return "SyntaxError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail) {
  std::string msg{to_string(code)};
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, std::optional<std::size_t> row,
             std::optional<std::size_t> col)
    : std::runtime_error(compose(code, detail)), code_(code), row_(row), col_(col) {}

}  // namespace qows
