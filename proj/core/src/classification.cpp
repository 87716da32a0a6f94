#include "qows/classification.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qows/error.hpp"
#include "qows/parallel.hpp"

namespace qows {

std::optional<LeaderString> permutation_search(const Quasigroup& q, std::size_t n,
                                               std::size_t max_len, LeaderAlphabet alphabet,
                                               std::uint64_t budget) {
  LeaderString tokens;
  for (std::size_t c = 0; c < q.order(); ++c) tokens.push_back(Leader::constant(static_cast<Symbol>(c)));
  if (alphabet == LeaderAlphabet::ConstantsAndIndices) {
    for (std::size_t j = 0; j < n; ++j) tokens.push_back(Leader::index(j));
  }
  (void)domain_size(q.order(), n);

  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::size_t> digits(len, 0);
    OwfSpec spec = OwfSpec::make(q, n, LeaderString(len, tokens.front()));
    while (true) {
      for (std::size_t k = 0; k < len; ++k) spec.leaders[k] = tokens[digits[k]];
      if (is_permutation(spec, budget)) return spec.leaders;
      std::size_t k = len;
      while (k > 0 && ++digits[k - 1] == tokens.size()) digits[--k] = 0;
      if (k == 0) break;
    }
  }
  return std::nullopt;
}

std::size_t minimal_period(std::span<const Symbol> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  // border[i] = length of the longest proper border of s[0, i).
  std::vector<std::size_t> border(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = border[k];
    if (s[i] == s[k]) ++k;
    border[i + 1] = k;
  }
  return n - border[n];
}

PeriodProfile period_profile(const Quasigroup& q, Symbol leader, std::span<const Symbol> motif,
                             std::size_t width, std::size_t iterations) {
  if (motif.empty() || width == 0 || width % motif.size() != 0) {
    throw Error(ErrorCode::LengthMismatch, "width " + std::to_string(width) +
                                                 " is not a positive multiple of motif length " +
                                                 std::to_string(motif.size()));
  }
  if (leader >= q.order()) throw Error(ErrorCode::OrderMismatch, "leader " + std::to_string(leader));
  for (Symbol x : motif) {
    if (x >= q.order()) throw Error(ErrorCode::OrderMismatch, "motif symbol " + std::to_string(x));
  }

  QString s(width);
  for (std::size_t i = 0; i < width; ++i) s[i] = motif[i % motif.size()];

  PeriodProfile profile;
  profile.leader = leader;
  profile.samples.reserve(iterations);
  for (std::size_t k = 1; k <= iterations; ++k) {
    detail::e_transform_inplace(q, leader, s);
    const std::size_t p = minimal_period(s);
    const bool capped = 2 * p > width;
    profile.samples.push_back({k, capped ? width : p, capped});
  }
  return profile;
}

std::size_t ClassLabel::final_period() const {
  std::size_t worst = 0;
  for (const auto& p : profiles) {
    if (!p.samples.empty()) worst = std::max(worst, p.samples.back().period);
  }
  return worst;
}

ClassLabel classify(const Quasigroup& q, const ClassifySettings& settings) {
  std::vector<Symbol> motif = settings.motif;
  if (motif.empty()) {
    motif.resize(q.order());
    std::iota(motif.begin(), motif.end(), Symbol{0});
  }
  std::vector<Symbol> leaders = settings.leaders;
  if (leaders.empty()) {
    leaders.resize(q.order());
    std::iota(leaders.begin(), leaders.end(), Symbol{0});
  }
  const double limit = settings.alpha * static_cast<double>(settings.iterations) *
                       static_cast<double>(motif.size());

  ClassLabel out;
  bool bounded = true;
  for (Symbol l : leaders) {
    out.profiles.push_back(period_profile(q, l, motif, settings.width, settings.iterations));
    const PeriodSample& last = out.profiles.back().samples.back();
    if (last.capped || static_cast<double>(last.period) > limit) bounded = false;
  }
  out.label = bounded ? FractalClass::Fractal : FractalClass::NonFractal;

  if (settings.search_permutation) {
    out.permutation_searched = true;
    out.permutation_witness = permutation_search(q, settings.search_n, settings.search_max_len,
                                                 settings.search_alphabet);
  }
  return out;
}

const std::vector<std::size_t>& published_fractal_list() {
  static const std::vector<std::size_t> list = {
      1,   2,   3,   4,   5,   7,   9,   11,  14,  18,  21,  24,  25,  26,  27,  28,  37,  40,
      43,  46,  49,  51,  54,  57,  60,  63,  70,  71,  77,  80,  82,  83,  92,  93,  100, 101,
      110, 111, 113, 116, 121, 126, 127, 132, 133, 138, 139, 144, 145, 146, 147, 148, 157, 160,
      163, 166, 169, 170, 171, 172, 174, 176, 178, 179, 182, 185, 189, 192, 196, 197, 203, 206,
      212, 213, 218, 222, 223, 228, 229, 232, 234, 235, 242, 243, 246, 252, 253, 259, 262, 263,
      269, 272, 274, 275, 284, 285, 292, 293, 302, 303, 305, 308, 314, 315, 318, 324, 325, 331,
      334, 335, 342, 343, 345, 348, 349, 354, 355, 359, 364, 365, 371, 374, 380, 381, 385, 388,
      392, 395, 398, 399, 401, 403, 405, 406, 407, 408, 411, 414, 417, 420, 429, 430, 431, 432,
      433, 438, 439, 444, 445, 450, 451, 456, 461, 464, 466, 467, 476, 477, 484, 485, 494, 495,
      497, 500, 506, 507, 514, 517, 520, 523, 526, 528, 531, 534, 537, 540, 549, 550, 551, 552,
      553, 556, 559, 563, 566, 568, 570, 572, 573, 574, 575, 576,
  };
  return list;
}

CensusReport census_order4(std::size_t n, std::size_t max_len, LeaderAlphabet alphabet,
                           std::size_t workers, const ClassifySettings& settings) {
  CensusReport report;
  report.n = n;
  report.max_len = max_len;
  report.alphabet = alphabet;
  report.settings = settings;
  report.settings.search_permutation = true;
  report.settings.search_n = n;
  report.settings.search_max_len = max_len;
  report.settings.search_alphabet = alphabet;

  const auto& all = enumerate_order4();
  report.entries.resize(all.size());
  parallel_ranges(all.size(), workers, [&](std::uint64_t begin, std::uint64_t end, std::size_t) {
    for (std::uint64_t k = begin; k < end; ++k) {
      const ClassLabel label = classify(all[k], report.settings);
      report.entries[k] = CensusEntry{static_cast<std::size_t>(k + 1), label.permutation_label(),
                                      label.label, label.permutation_witness,
                                      label.final_period()};
    }
  });

  for (const CensusEntry& e : report.entries) {
    (e.permutation_class == FractalClass::Fractal ? report.fractal : report.non_fractal)
        .push_back(e.index);
    if (e.permutation_class != e.period_class) report.classifier_disagreements.push_back(e.index);
  }
  std::vector<std::size_t> published = published_fractal_list();
  std::sort(published.begin(), published.end());
  std::set_difference(report.fractal.begin(), report.fractal.end(), published.begin(),
                      published.end(), std::back_inserter(report.missing_from_published));
  std::set_difference(published.begin(), published.end(), report.fractal.begin(),
                      report.fractal.end(), std::back_inserter(report.absent_from_computed));
  return report;
}

}  // namespace qows
