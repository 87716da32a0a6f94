#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qows/classification.hpp"
#include "qows/inversion.hpp"
#include "qows/quasigroup.hpp"
#include "qows/transforms.hpp"

namespace qows::io {

// Quasigroup text (.qg): the order on the first line, then `order` rows of
// whitespace-separated entries. Lines starting with '#' are comments and
// trailing whitespace is ignored. Throws SyntaxError(line) or any validate error.
[[nodiscard]] Quasigroup parse_quasigroup(std::string_view text);
// Canonical form: single spaces, newline-terminated rows, no comments.
[[nodiscard]] std::string serialize_quasigroup(const Quasigroup& q);

// Strings (.qs): whitespace-separated symbols; for order <= 10 a contiguous
// run of digits ("01230") is read one symbol per digit.
[[nodiscard]] QString parse_string(std::string_view text, std::size_t order);
[[nodiscard]] std::string format_string(std::span<const Symbol> s);
// Contiguous digits when order <= 10, otherwise the spaced form.
[[nodiscard]] std::string format_string_compact(std::span<const Symbol> s, std::size_t order);

// Leader strings: comma-separated tokens, each a constant or i<j>, e.g. "3,3,i1,i0".
// An empty text (or "()") is the empty leader string.
[[nodiscard]] LeaderString parse_leaders(std::string_view text);
[[nodiscard]] std::string format_leaders(const LeaderString& leaders);

// Attack record: "preimages", "guesses", "lookups" and "elapsed_ms" lines,
// then one preimage per line. With as_values the preimages are written as
// packed base-s integers instead of strings.
struct RecordStyle {
  bool as_values = false;
  bool timing = true;  // false writes elapsed_ms 0
  std::size_t order = 0;
};
[[nodiscard]] std::string format_attack_record(const AttackTrace& trace, const RecordStyle& style);

// Census report (.census.txt): a '#' parameter header, then one line per
// quasigroup: index, label, witness ("-" when none, "()" when empty) and the
// period after the last iteration.
[[nodiscard]] std::string format_census_text(const CensusReport& report);
[[nodiscard]] std::string format_census_json(const CensusReport& report);

[[nodiscard]] std::string_view label_name(FractalClass c) noexcept;

// Gray palette: symbol k of an order-s quasigroup maps to level
// 255 - round(255 k / (s-1)); for s = 4 that is 255, 170, 85, 0.
[[nodiscard]] std::vector<std::uint8_t> palette(std::size_t order);

enum class PixmapEncoding { Binary, Text };

/// Portable pixmap of the iterates of e_leader over the periodic string built
/// from motif: row 0 is the initial string, row k the k-th iterate.
/// Height = iterations + 1. Throws LengthMismatch when width is not a
/// positive multiple of |motif|.
[[nodiscard]] std::string render_iterations(const Quasigroup& q, Symbol leader,
                                            std::span<const Symbol> motif, std::size_t width,
                                            std::size_t iterations,
                                            PixmapEncoding encoding = PixmapEncoding::Binary);

/// Inverse of render_iterations for either encoding: rows of symbols through
/// the palette inverse. Throws SyntaxError on malformed data or unknown colors.
[[nodiscard]] std::vector<QString> decode_pixmap(std::string_view bytes, std::size_t order);

}  // namespace qows::io
