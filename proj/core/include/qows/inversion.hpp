#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qows/quasigroup.hpp"
#include "qows/transforms.hpp"

namespace qows {

/// Default cap on forward evaluations (brute force, histograms) and on
/// explored guess branches (attacks). The QOWS_BUDGET environment variable
/// overrides it at the CLI level.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

struct AttackTrace {
  std::vector<QString> preimages;  // ascending, each verified by forward evaluation
  std::uint64_t guesses = 0;
  std::uint64_t lookups = 0;
  std::chrono::nanoseconds elapsed{0};
  std::vector<std::string> warnings;
};

struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;
  std::size_t workers = 1;
};

struct AttackOptions {
  std::uint64_t budget = kDefaultBudget;  // explored guess branches
  bool first_hit = false;                 // stop at the first verified preimage
};

/// The table-filling scheme used by the lookup-table attacks.
///
/// Row 0 is the unknown input A, row R (= number of transformation steps) is
/// the known output B, and row i holds the intermediate string after i steps.
/// Every cell is tied to its neighbours by one quasigroup equation
///
///     cell(i, j) = left * cell(i-1, j),  left = cell(i, j-1)  or, for j = 0,
///                                        the leader of step i,
///
/// where a leader is either a constant or (for the reverse passes) one of the
/// row-0 cells. Knowing any two of the three symbols of an equation fixes the
/// third through mul, ldiv or rdiv, and propagate() applies that rule to a
/// fixpoint. Assignments are recorded on a trail so a search can rewind.
class AttackGrid {
 public:
  /// Leader of one transformation step: a constant, or the input position it copies.
  struct StepLeader {
    bool from_input = false;
    Symbol constant = 0;
    std::size_t input_pos = 0;
  };

  /// Builds the grid with B in the last row. No propagation happens yet.
  AttackGrid(const Quasigroup& q, std::vector<StepLeader> steps, std::span<const Symbol> b);

  static std::vector<StepLeader> r1_steps(std::size_t n);
  static std::vector<StepLeader> r2_steps(std::size_t n);
  static std::vector<StepLeader> rn_steps(const OwfSpec& spec);

  [[nodiscard]] std::size_t steps() const noexcept { return steps_.size(); }
  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] std::optional<Symbol> cell(std::size_t row, std::size_t col) const;
  /// Leader applied at step `row` (1-based), when known.
  [[nodiscard]] std::optional<Symbol> leader(std::size_t row) const;
  [[nodiscard]] std::size_t known_cells() const noexcept { return trail_.size(); }

  /// Runs every equation to a fixpoint. Returns false on contradiction.
  bool propagate_all();
  /// Fixes input symbol a_pos and propagates. Returns false on contradiction.
  bool assign_input(std::size_t pos, Symbol value);

  [[nodiscard]] std::optional<std::size_t> first_unknown_input() const;
  [[nodiscard]] QString input() const;  // requires a complete row 0

  [[nodiscard]] std::size_t mark() const noexcept { return trail_.size(); }
  void rewind(std::size_t mark);

  [[nodiscard]] std::uint64_t lookups() const noexcept { return lookups_; }

 private:
  struct Equation {
    int left;  // cell id, or -1 for a constant leader
    int right;
    int result;
    Symbol left_constant;
  };

  bool set(int id, Symbol value);
  bool drain();
  [[nodiscard]] int id(std::size_t row, std::size_t col) const noexcept {
    return static_cast<int>(row * width_ + col);
  }

  const Quasigroup* q_;
  std::vector<StepLeader> steps_;
  std::size_t width_;
  std::vector<std::int16_t> cells_;  // -1 = unknown
  std::vector<Equation> equations_;
  std::vector<std::vector<int>> watchers_;  // equations touching each cell
  std::vector<int> trail_;
  std::vector<int> queue_;
  std::vector<bool> queued_;
  std::uint64_t lookups_ = 0;
};

/// Exhaustive baseline: every A in Q^N with r_n(spec, A) = B. guesses = s^N.
/// Throws LengthMismatch, or BudgetExceeded when s^N > options.budget.
[[nodiscard]] AttackTrace brute_preimages(const OwfSpec& spec, std::span<const Symbol> b,
                                          const SearchOptions& options = {});

/// Exhaustive baseline for R1.
[[nodiscard]] AttackTrace brute_preimages_r1(const Quasigroup& q, std::span<const Symbol> b,
                                             const SearchOptions& options = {});

/// All preimages of B under R1 by filling the attack grid: bottom-up
/// propagation, then depth-first guesses of a_0, a_1, ... (ascending symbols)
/// with fixpoint propagation after each guess. Every closed candidate is
/// verified by forward evaluation. guesses counts guess tuples whose branch was
/// resolved, either refuted by propagation or closed into a candidate.
[[nodiscard]] AttackTrace attack_r1(const Quasigroup& q, std::span<const Symbol> b,
                                    const AttackOptions& options = {});

/// Same machinery over the 2N-step scheme of R2.
[[nodiscard]] AttackTrace attack_r2(const Quasigroup& q, std::span<const Symbol> b,
                                    const AttackOptions& options = {});

/// Same machinery over the |L| + 2N step scheme of a member of R_N.
[[nodiscard]] AttackTrace attack_rn(const OwfSpec& spec, std::span<const Symbol> b,
                                    const AttackOptions& options = {});

struct PreimageHistogram {
  std::size_t order = 0;
  std::size_t n = 0;
  std::uint64_t domain_size = 0;
  std::vector<std::uint64_t> counts;  // indexed by packed output value

  [[nodiscard]] bool is_permutation() const;
  /// All nonzero counts equal.
  [[nodiscard]] bool is_regular() const;
  [[nodiscard]] std::uint64_t image_size() const;
  /// Sum of all counts; equals domain_size.
  [[nodiscard]] std::uint64_t total() const;
};

/// Full forward enumeration of Q^N, split over options.workers threads. The
/// result does not depend on the worker count.
[[nodiscard]] PreimageHistogram preimage_histogram(const OwfSpec& spec,
                                                   const SearchOptions& options = {});

/// Injectivity test with early exit on the first collision.
[[nodiscard]] bool is_permutation(const OwfSpec& spec, std::uint64_t budget = kDefaultBudget);

}  // namespace qows
