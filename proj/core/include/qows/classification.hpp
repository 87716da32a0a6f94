#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qows/inversion.hpp"
#include "qows/quasigroup.hpp"
#include "qows/transforms.hpp"

namespace qows {

enum class FractalClass { Fractal, NonFractal };

/// Which tokens a leader-string search may use.
enum class LeaderAlphabet {
  Constants,            // Q only
  ConstantsAndIndices,  // Q ∪ {i_0, ..., i_{N-1}}
};

/// Bounded search for a leader string L that makes R_N a permutation of Q^N.
/// Strings are tried by increasing length 0..max_len; within a length in
/// lexicographic token order where every constant precedes every index.
/// Returns the first witness, or nullopt.
[[nodiscard]] std::optional<LeaderString> permutation_search(
    const Quasigroup& q, std::size_t n, std::size_t max_len,
    LeaderAlphabet alphabet = LeaderAlphabet::Constants, std::uint64_t budget = kDefaultBudget);

struct PeriodSample {
  std::size_t iteration;  // 1-based count of e-transformations applied
  std::size_t period;     // minimal period on the window, or the width when capped
  bool capped;            // no period repeating at least twice fits in the window
};

struct PeriodProfile {
  Symbol leader = 0;
  std::vector<PeriodSample> samples;
};

/// Iterates e_leader over the periodic string built from `motif` and records
/// the minimal period of each iterate (via the KMP failure function).
/// Throws LengthMismatch when width is not a positive multiple of |motif|.
[[nodiscard]] PeriodProfile period_profile(const Quasigroup& q, Symbol leader,
                                           std::span<const Symbol> motif, std::size_t width,
                                           std::size_t iterations);

/// Minimal p such that s[i] = s[i+p] for every i in the window (p = |s| when
/// no shorter shift matches).
[[nodiscard]] std::size_t minimal_period(std::span<const Symbol> s);

struct ClassifySettings {
  double alpha = 4.0;
  std::size_t iterations = 32;
  std::size_t width = 4096;
  std::vector<Symbol> motif;  // empty: (0, 1, ..., s-1)
  // Leaders whose growth is checked; empty: every symbol of Q.
  std::vector<Symbol> leaders;

  // Permutation-search side.
  bool search_permutation = true;
  std::size_t search_n = 2;
  std::size_t search_max_len = 4;
  LeaderAlphabet search_alphabet = LeaderAlphabet::Constants;
};

struct ClassLabel {
  FractalClass label = FractalClass::NonFractal;  // period-growth verdict
  std::vector<PeriodProfile> profiles;            // one per checked leader
  std::optional<LeaderString> permutation_witness;
  bool permutation_searched = false;

  /// The label implied by the permutation criterion.
  [[nodiscard]] FractalClass permutation_label() const noexcept {
    return permutation_witness ? FractalClass::Fractal : FractalClass::NonFractal;
  }
  /// Largest period at the final iteration over all checked leaders.
  [[nodiscard]] std::size_t final_period() const;
};

/// Fractal iff, for every checked leader, the period after K iterations stays
/// within alpha * K * |motif| and is not capped.
[[nodiscard]] ClassLabel classify(const Quasigroup& q, const ClassifySettings& settings = {});

struct CensusEntry {
  std::size_t index;  // lexicographic number
  FractalClass permutation_class;
  FractalClass period_class;
  std::optional<LeaderString> witness;
  std::size_t final_period;
};

struct CensusReport {
  std::size_t n = 2;
  std::size_t max_len = 4;
  LeaderAlphabet alphabet = LeaderAlphabet::Constants;
  ClassifySettings settings;

  std::vector<CensusEntry> entries;       // ascending by index
  std::vector<std::size_t> fractal;       // permutation-admitting
  std::vector<std::size_t> non_fractal;
  std::vector<std::size_t> missing_from_published;  // computed F, not printed
  std::vector<std::size_t> absent_from_computed;    // printed F, not computed
  std::vector<std::size_t> classifier_disagreements;  // period vs permutation
};

/// The printed class-F list (lexicographic numbers), as published.
[[nodiscard]] const std::vector<std::size_t>& published_fractal_list();
/// The class size stated in the text.
inline constexpr std::size_t kPublishedFractalCount = 192;

/// Classifies all 576 order-4 quasigroups by permutation search and by period
/// growth, and diffs the permutation classes against the published list.
/// Work is split over `workers` threads; the report is identical for any count.
[[nodiscard]] CensusReport census_order4(std::size_t n = 2, std::size_t max_len = 4,
                                         LeaderAlphabet alphabet = LeaderAlphabet::Constants,
                                         std::size_t workers = 1,
                                         const ClassifySettings& settings = {});

}  // namespace qows
