#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qows {

// Elements of Q = {0, ..., s-1}. Orders are capped at 256 so a symbol fits a byte.
using Symbol = std::uint8_t;
inline constexpr std::size_t kMaxOrder = 256;

/// A finite quasigroup stored as its Latin-square multiplication table,
/// together with precomputed left and right division tables.
///
/// Instances are only obtainable through validate() (or helpers that call it),
/// so every Quasigroup upholds the Latin-square invariant. Immutable after
/// construction.
class Quasigroup {
 public:
  /// Throws qows::Error (NotSquare, EntryOutOfRange, RowNotPermutation,
  /// ColNotPermutation) when the table is not a Latin square.
  static Quasigroup validate(const std::vector<std::vector<int>>& table);

  [[nodiscard]] std::size_t order() const noexcept { return order_; }

  // Checked accessors; throw SymbolOutOfRange.
  [[nodiscard]] Symbol mul(Symbol u, Symbol v) const;
  /// The unique x with u * x = v.
  [[nodiscard]] Symbol ldiv(Symbol u, Symbol v) const;
  /// The unique y with y * u = v.
  [[nodiscard]] Symbol rdiv(Symbol u, Symbol v) const;

  // Unchecked fast paths for inner loops. Callers guarantee u, v < order().
  [[nodiscard]] Symbol mul_unchecked(Symbol u, Symbol v) const noexcept {
    return table_[u * order_ + v];
  }
  [[nodiscard]] Symbol ldiv_unchecked(Symbol u, Symbol v) const noexcept {
    return left_div_[u * order_ + v];
  }
  [[nodiscard]] Symbol rdiv_unchecked(Symbol u, Symbol v) const noexcept {
    return right_div_[u * order_ + v];
  }

  [[nodiscard]] std::span<const Symbol> row(Symbol u) const;
  [[nodiscard]] std::span<const Symbol> cells() const noexcept { return table_; }
  [[nodiscard]] std::vector<std::vector<int>> to_matrix() const;

  friend bool operator==(const Quasigroup& a, const Quasigroup& b) noexcept {
    return a.order_ == b.order_ && a.table_ == b.table_;
  }
  friend auto operator<=>(const Quasigroup& a, const Quasigroup& b) noexcept {
    if (auto c = a.order_ <=> b.order_; c != 0) return c;
    return a.table_ <=> b.table_;
  }

 private:
  Quasigroup(std::size_t order, std::vector<Symbol> table);

  std::size_t order_;
  std::vector<Symbol> table_;
  std::vector<Symbol> left_div_;
  std::vector<Symbol> right_div_;
};

struct AlgebraicProfile {
  bool commutative = true;
  bool associative = true;
  // (u, v) with u*v != v*u when !commutative.
  std::optional<std::pair<Symbol, Symbol>> commutativity_witness;
  // (u, v, w) with (u*v)*w != u*(v*w) when !associative.
  std::optional<std::array<Symbol, 3>> associativity_witness;
};

/// Exhaustive check over all pairs and triples. Witnesses are the first
/// counterexample in ascending (u, v[, w]) order.
[[nodiscard]] AlgebraicProfile algebraic_probe(const Quasigroup& q);

/// All 576 Latin squares of order 4, ascending by their row-major 16-symbol
/// flattening. Position k-1 holds lexicographic number k. Computed once.
[[nodiscard]] const std::vector<Quasigroup>& enumerate_order4();

/// 1-based lexicographic number of an order-4 quasigroup. Throws OrderNotSupported otherwise.
[[nodiscard]] std::size_t lex_index(const Quasigroup& q);

/// Order-4 quasigroup by lexicographic number in [1, 576]. Throws OrderNotSupported when out of range.
[[nodiscard]] const Quasigroup& order4_by_index(std::size_t lex);

/// Deterministic random Latin square: rows are built one at a time by
/// matching columns to seeded, shuffled candidate symbols with augmenting-path
/// backtracking. Not uniform over all Latin squares.
[[nodiscard]] Quasigroup random_latin(std::size_t order, std::uint64_t seed);

}  // namespace qows
