#include "qows/quasigroup.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qows/error.hpp"
#include "qows/random.hpp"

namespace qows {

namespace {

void require_symbols(std::size_t order, Symbol u, Symbol v) {
  if (u >= order || v >= order) {
    throw Error(ErrorCode::SymbolOutOfRange, "symbols (" + std::to_string(u) + ", " +
                                                 std::to_string(v) + ") for order " +
                                                 std::to_string(order));
  }
}

}  // namespace

Quasigroup::Quasigroup(std::size_t order, std::vector<Symbol> table)
    : order_(order),
      table_(std::move(table)),
      left_div_(order * order),
      right_div_(order * order) {
  for (std::size_t u = 0; u < order_; ++u) {
    for (std::size_t v = 0; v < order_; ++v) {
      const Symbol p = table_[u * order_ + v];
      left_div_[u * order_ + p] = static_cast<Symbol>(v);
      right_div_[v * order_ + p] = static_cast<Symbol>(u);
    }
  }
}

Quasigroup Quasigroup::validate(const std::vector<std::vector<int>>& table) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorCode::NotSquare, "empty table");
  if (n > kMaxOrder) {
    throw Error(ErrorCode::NotSquare, "order " + std::to_string(n) + " exceeds " +
                                          std::to_string(kMaxOrder));
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n) {
      throw Error(ErrorCode::NotSquare,
                  "row " + std::to_string(r) + " has " + std::to_string(table[r].size()) +
                      " entries, expected " + std::to_string(n),
                  r);
    }
  }

  std::vector<Symbol> cells(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int x = table[r][c];
      if (x < 0 || static_cast<std::size_t>(x) >= n) {
        throw Error(ErrorCode::EntryOutOfRange,
                    "entry " + std::to_string(x) + " at (" + std::to_string(r) + ", " +
                        std::to_string(c) + ")",
                    r, c);
      }
      cells[r * n + c] = static_cast<Symbol>(x);
    }
  }

  std::vector<bool> seen(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t c = 0; c < n; ++c) {
      const Symbol x = cells[r * n + c];
      if (seen[x]) throw Error(ErrorCode::RowNotPermutation, "row " + std::to_string(r), r);
      seen[x] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t r = 0; r < n; ++r) {
      const Symbol x = cells[r * n + c];
      if (seen[x]) {
        throw Error(ErrorCode::ColNotPermutation, "column " + std::to_string(c), std::nullopt, c);
      }
      seen[x] = true;
    }
  }
  return Quasigroup(n, std::move(cells));
}

Symbol Quasigroup::mul(Symbol u, Symbol v) const {
  require_symbols(order_, u, v);
  return mul_unchecked(u, v);
}

Symbol Quasigroup::ldiv(Symbol u, Symbol v) const {
  require_symbols(order_, u, v);
  return ldiv_unchecked(u, v);
}

Symbol Quasigroup::rdiv(Symbol u, Symbol v) const {
  require_symbols(order_, u, v);
  return rdiv_unchecked(u, v);
}

std::span<const Symbol> Quasigroup::row(Symbol u) const {
  require_symbols(order_, u, 0);
  return std::span<const Symbol>(table_).subspan(u * order_, order_);
}

std::vector<std::vector<int>> Quasigroup::to_matrix() const {
  std::vector<std::vector<int>> m(order_, std::vector<int>(order_));
  for (std::size_t r = 0; r < order_; ++r) {
    for (std::size_t c = 0; c < order_; ++c) m[r][c] = table_[r * order_ + c];
  }
  return m;
}

AlgebraicProfile algebraic_probe(const Quasigroup& q) {
  AlgebraicProfile profile;
  const auto s = static_cast<unsigned>(q.order());
  for (unsigned u = 0; u < s && profile.commutative; ++u) {
    for (unsigned v = u + 1; v < s; ++v) {
      const auto a = static_cast<Symbol>(u);
      const auto b = static_cast<Symbol>(v);
      if (q.mul_unchecked(a, b) != q.mul_unchecked(b, a)) {
        profile.commutative = false;
        profile.commutativity_witness = std::pair{a, b};
        break;
      }
    }
  }
  for (unsigned u = 0; u < s && profile.associative; ++u) {
    for (unsigned v = 0; v < s && profile.associative; ++v) {
      for (unsigned w = 0; w < s; ++w) {
        const auto a = static_cast<Symbol>(u);
        const auto b = static_cast<Symbol>(v);
        const auto c = static_cast<Symbol>(w);
        if (q.mul_unchecked(q.mul_unchecked(a, b), c) != q.mul_unchecked(a, q.mul_unchecked(b, c))) {
          profile.associative = false;
          profile.associativity_witness = std::array<Symbol, 3>{a, b, c};
          break;
        }
      }
    }
  }
  return profile;
}

namespace {

// Cell-by-cell backtracking in row-major order with ascending symbol choice
// emits squares already sorted by their row-major flattening.
void fill_order4(std::vector<std::vector<int>>& grid, std::size_t cell,
                 std::array<unsigned, 4>& row_used, std::array<unsigned, 4>& col_used,
                 std::vector<Quasigroup>& out) {
  if (cell == 16) {
    out.push_back(Quasigroup::validate(grid));
    return;
  }
  const std::size_t r = cell / 4;
  const std::size_t c = cell % 4;
  for (int x = 0; x < 4; ++x) {
    const unsigned bit = 1u << x;
    if ((row_used[r] & bit) || (col_used[c] & bit)) continue;
    row_used[r] |= bit;
    col_used[c] |= bit;
    grid[r][c] = x;
    fill_order4(grid, cell + 1, row_used, col_used, out);
    row_used[r] &= ~bit;
    col_used[c] &= ~bit;
  }
}

}  // namespace

const std::vector<Quasigroup>& enumerate_order4() {
  static const std::vector<Quasigroup> all = [] {
    std::vector<Quasigroup> out;
    out.reserve(576);
    std::vector<std::vector<int>> grid(4, std::vector<int>(4, 0));
    std::array<unsigned, 4> row_used{};
    std::array<unsigned, 4> col_used{};
    fill_order4(grid, 0, row_used, col_used, out);
    return out;
  }();
  return all;
}

std::size_t lex_index(const Quasigroup& q) {
  if (q.order() != 4) {
    throw Error(ErrorCode::OrderNotSupported,
                "lexicographic numbering is defined for order 4, got " + std::to_string(q.order()));
  }
  const auto& all = enumerate_order4();
  const auto it = std::lower_bound(all.begin(), all.end(), q);
  return static_cast<std::size_t>(it - all.begin()) + 1;
}

const Quasigroup& order4_by_index(std::size_t lex) {
  const auto& all = enumerate_order4();
  if (lex < 1 || lex > all.size()) {
    throw Error(ErrorCode::OrderNotSupported,
                "lexicographic number " + std::to_string(lex) + " outside [1, 576]");
  }
  return all[lex - 1];
}

namespace {

// Kuhn augmenting path: tries to give `col` a symbol, displacing earlier columns.
bool augment(std::size_t col, const std::vector<std::vector<Symbol>>& candidates,
             std::vector<int>& owner_of_symbol, std::vector<bool>& visited) {
  for (Symbol x : candidates[col]) {
    if (visited[x]) continue;
    visited[x] = true;
    if (owner_of_symbol[x] < 0 ||
        augment(static_cast<std::size_t>(owner_of_symbol[x]), candidates, owner_of_symbol,
                visited)) {
      owner_of_symbol[x] = static_cast<int>(col);
      return true;
    }
  }
  return false;
}

}  // namespace

Quasigroup random_latin(std::size_t order, std::uint64_t seed) {
  if (order == 0 || order > kMaxOrder) {
    throw Error(ErrorCode::OrderNotSupported, "order " + std::to_string(order));
  }
  SeededRng rng(seed);
  std::vector<std::vector<int>> table(order, std::vector<int>(order, -1));
  std::vector<std::vector<bool>> col_has(order, std::vector<bool>(order, false));

  std::vector<std::size_t> col_order(order);
  std::vector<std::vector<Symbol>> candidates(order);
  for (std::size_t r = 0; r < order; ++r) {
    std::iota(col_order.begin(), col_order.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(col_order));
    for (std::size_t c = 0; c < order; ++c) {
      candidates[c].clear();
      for (std::size_t x = 0; x < order; ++x) {
        if (!col_has[c][x]) candidates[c].push_back(static_cast<Symbol>(x));
      }
      rng.shuffle(std::span<Symbol>(candidates[c]));
    }

    // A partial Latin rectangle always extends by one row (Hall), so every
    // column finds an augmenting path.
    std::vector<int> owner_of_symbol(order, -1);
    std::vector<bool> visited(order);
    for (std::size_t c : col_order) {
      std::fill(visited.begin(), visited.end(), false);
      augment(c, candidates, owner_of_symbol, visited);
    }
    for (std::size_t x = 0; x < order; ++x) {
      const auto c = static_cast<std::size_t>(owner_of_symbol[x]);
      table[r][c] = static_cast<int>(x);
      col_has[c][x] = true;
    }
  }
  return Quasigroup::validate(table);
}

}  // namespace qows
