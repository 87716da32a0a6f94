#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qows {

enum class ErrorCode {
  NotSquare,
  EntryOutOfRange,
  RowNotPermutation,
  ColNotPermutation,
  SymbolOutOfRange,
  OrderNotSupported,
  OrderMismatch,
  EmptyString,
  LengthMismatch,
  IndexLeaderOutOfRange,
  BudgetExceeded,
  SyntaxError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every domain failure in the library is reported through this type. The
// optional row/col (or line, for SyntaxError) pinpoint the offending entry.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail, std::optional<std::size_t> row = std::nullopt,
        std::optional<std::size_t> col = std::nullopt);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  [[nodiscard]] std::optional<std::size_t> row() const noexcept { return row_; }
  [[nodiscard]] std::optional<std::size_t> col() const noexcept { return col_; }
  [[nodiscard]] std::optional<std::size_t> line() const noexcept { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
  std::optional<std::size_t> col_;
};

}  // namespace qows
