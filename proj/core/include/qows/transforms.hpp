#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qows/quasigroup.hpp"

namespace qows {

/// A string over Q. Transformations reject the empty string.
using QString = std::vector<Symbol>;

/// One entry of a preprocessing leader string: either a constant from Q or a
/// reference i_j to the j-th symbol of the input.
struct Leader {
  enum class Kind : std::uint8_t { Const, Index };

  Kind kind = Kind::Const;
  std::size_t value = 0;

  static constexpr Leader constant(Symbol c) noexcept { return {Kind::Const, c}; }
  static constexpr Leader index(std::size_t j) noexcept { return {Kind::Index, j}; }

  [[nodiscard]] constexpr bool is_index() const noexcept { return kind == Kind::Index; }

  friend constexpr bool operator==(const Leader&, const Leader&) = default;
  friend constexpr auto operator<=>(const Leader&, const Leader&) = default;
};

/// May be empty.
using LeaderString = std::vector<Leader>;

/// A fully determined member of the R_N family: quasigroup, input length and
/// preprocessing leaders.
struct OwfSpec {
  Quasigroup q;
  std::size_t n;
  LeaderString leaders;

  /// Checks n >= 1, constants < order and indices < n. Throws OrderMismatch,
  /// EmptyString or IndexLeaderOutOfRange.
  static OwfSpec make(Quasigroup q, std::size_t n, LeaderString leaders = {});
};

/// b_0 = l*a_0, b_i = b_{i-1}*a_i.
[[nodiscard]] QString e_transform(const Quasigroup& q, Symbol leader, std::span<const Symbol> a);

/// a_0 = l\b_0, a_i = b_{i-1}\b_i. Two-sided inverse of e_transform for a fixed leader.
[[nodiscard]] QString e_inverse(const Quasigroup& q, Symbol leader, std::span<const Symbol> b);

/// Applies one e-transformation per leader; leaders[0] is applied first.
[[nodiscard]] QString apply_leader_sequence(const Quasigroup& q, std::span<const Symbol> leaders,
                                            std::span<const Symbol> a);

/// Concrete leaders of R_N for input a: spec.leaders with every i_j replaced by
/// a_j, then the reversed input twice. Length |L| + 2N. Indices are resolved
/// against the original input only.
[[nodiscard]] std::vector<Symbol> resolve_leaders(const OwfSpec& spec, std::span<const Symbol> a);

/// R1(A): leaders a_{N-1}, ..., a_0 in application order.
[[nodiscard]] QString r1(const Quasigroup& q, std::span<const Symbol> a);

/// R2(A): the reversed input applied twice (2N steps).
[[nodiscard]] QString r2(const Quasigroup& q, std::span<const Symbol> a);

/// R_N(A) = apply_leader_sequence(q, resolve_leaders(spec, A), A).
[[nodiscard]] QString r_n(const OwfSpec& spec, std::span<const Symbol> a);

/// Positional base-s encoding, most significant symbol first. For s = 4 this is
/// the "two-bit letters" convention: (3, 0) packs to 12.
[[nodiscard]] std::uint64_t pack(std::span<const Symbol> a, std::size_t order);
[[nodiscard]] QString unpack(std::uint64_t value, std::size_t order, std::size_t length);

/// s^n, or throws BudgetExceeded when it does not fit in 64 bits.
[[nodiscard]] std::uint64_t domain_size(std::size_t order, std::size_t n);

namespace detail {

// In-place e-transformation without validation; used by the enumeration loops.
inline void e_transform_inplace(const Quasigroup& q, Symbol leader, std::span<Symbol> s) noexcept {
  Symbol prev = leader;
  for (Symbol& x : s) {
    prev = q.mul_unchecked(prev, x);
    x = prev;
  }
}

}  // namespace detail

}  // namespace qows
