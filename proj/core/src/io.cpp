#include "qows/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qows/error.hpp"

namespace qows::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_uint(std::string_view token, std::uint64_t& out) {
  if (token.empty()) return false;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

[[noreturn]] void syntax(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what, line);
}

}  // namespace

Quasigroup parse_quasigroup(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;  // (1-based number, content)
  std::size_t number = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++number;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    lines.emplace_back(number, body);
  }
  if (lines.empty()) syntax(number, "missing order line");

  std::uint64_t order = 0;
  if (!parse_uint(lines[0].second, order) || order == 0) {
    syntax(lines[0].first, "expected a positive order, got '" + std::string(lines[0].second) + "'");
  }
  if (order > kMaxOrder) syntax(lines[0].first, "order exceeds " + std::to_string(kMaxOrder));
  if (lines.size() - 1 < order) {
    syntax(number, "expected " + std::to_string(order) + " rows, found " +
                       std::to_string(lines.size() - 1));
  }
  if (lines.size() - 1 > order) syntax(lines[order + 1].first, "unexpected extra row");

  std::vector<std::vector<int>> table;
  table.reserve(order);
  for (std::size_t r = 1; r <= order; ++r) {
    std::vector<int> row;
    for (std::string_view token : split_ws(lines[r].second)) {
      std::uint64_t v = 0;
      if (!parse_uint(token, v) || v > 1u << 20) {
        syntax(lines[r].first, "bad entry '" + std::string(token) + "'");
      }
      row.push_back(static_cast<int>(v));
    }
    if (row.size() != order) {
      syntax(lines[r].first, "expected " + std::to_string(order) + " entries, found " +
                                 std::to_string(row.size()));
    }
    table.push_back(std::move(row));
  }
  return Quasigroup::validate(table);
}

std::string serialize_quasigroup(const Quasigroup& q) {
  std::string out = std::to_string(q.order()) + "\n";
  const auto s = static_cast<unsigned>(q.order());
  for (unsigned r = 0; r < s; ++r) {
    for (unsigned c = 0; c < s; ++c) {
      if (c) out += ' ';
      out += std::to_string(q.mul_unchecked(static_cast<Symbol>(r), static_cast<Symbol>(c)));
    }
    out += '\n';
  }
  return out;
}

QString parse_string(std::string_view text, std::size_t order) {
  const auto tokens = split_ws(text);
  QString out;
  auto push = [&](std::uint64_t v, std::string_view token) {
    if (v >= order) {
      throw Error(ErrorCode::OrderMismatch, "symbol '" + std::string(token) + "' for order " +
                                                std::to_string(order));
    }
    out.push_back(static_cast<Symbol>(v));
  };
  const bool compact = order <= 10 && tokens.size() == 1 && tokens[0].size() > 1;
  for (std::string_view token : tokens) {
    if (compact) {
      for (char ch : token) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
          throw Error(ErrorCode::SyntaxError, "bad symbol '" + std::string(1, ch) + "'", 1);
        }
        push(static_cast<std::uint64_t>(ch - '0'), std::string_view(&ch, 1));
      }
    } else {
      std::uint64_t v = 0;
      if (!parse_uint(token, v)) {
        throw Error(ErrorCode::SyntaxError, "bad symbol '" + std::string(token) + "'", 1);
      }
      push(v, token);
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyString, "no symbols in input");
  return out;
}

std::string format_string(std::span<const Symbol> s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out;
}

std::string format_string_compact(std::span<const Symbol> s, std::size_t order) {
  if (order > 10) return format_string(s);
  std::string out;
  for (Symbol x : s) out += static_cast<char>('0' + x);
  return out;
}

LeaderString parse_leaders(std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "()") return {};
  LeaderString out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view token =
        trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    std::uint64_t v = 0;
    if (!token.empty() && (token.front() == 'i' || token.front() == 'I')) {
      if (!parse_uint(token.substr(1), v)) {
        throw Error(ErrorCode::SyntaxError, "bad index leader '" + std::string(token) + "'", 1);
      }
      out.push_back(Leader::index(v));
    } else {
      if (!parse_uint(token, v) || v >= kMaxOrder) {
        throw Error(ErrorCode::SyntaxError, "bad leader '" + std::string(token) + "'", 1);
      }
      out.push_back(Leader::constant(static_cast<Symbol>(v)));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_leaders(const LeaderString& leaders) {
  std::string out;
  for (std::size_t k = 0; k < leaders.size(); ++k) {
    if (k) out += ',';
    if (leaders[k].is_index()) out += 'i';
    out += std::to_string(leaders[k].value);
  }
  return out;
}

std::string format_attack_record(const AttackTrace& trace, const RecordStyle& style) {
  std::ostringstream os;
  os << "preimages " << trace.preimages.size() << '\n';
  os << "guesses " << trace.guesses << '\n';
  os << "lookups " << trace.lookups << '\n';
  char ms[64];
  const double elapsed = style.timing ? static_cast<double>(trace.elapsed.count()) / 1e6 : 0.0;
  std::snprintf(ms, sizeof ms, "%.3f", elapsed);
  os << "elapsed_ms " << ms << '\n';
  for (const QString& a : trace.preimages) {
    if (style.as_values) {
      os << pack(a, style.order) << '\n';
    } else {
      os << (style.order ? format_string_compact(a, style.order) : format_string(a)) << '\n';
    }
  }
  return os.str();
}

std::string_view label_name(FractalClass c) noexcept {
  return c == FractalClass::Fractal ? "fractal" : "non-fractal";
}

namespace {

std::string join(const std::vector<std::size_t>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(xs[k]);
  }
  return out.empty() ? "-" : out;
}

std::string symbols_or(const std::vector<Symbol>& xs, const char* fallback) {
  if (xs.empty()) return fallback;
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(xs[k]);
  }
  return out;
}

std::string witness_text(const std::optional<LeaderString>& w) {
  if (!w) return "-";
  if (w->empty()) return "()";
  return format_leaders(*w);
}

const char* alphabet_name(LeaderAlphabet a) {
  return a == LeaderAlphabet::Constants ? "constants" : "constants+indices";
}

}  // namespace

std::string format_census_text(const CensusReport& r) {
  std::ostringstream os;
  char alpha[32];
  std::snprintf(alpha, sizeof alpha, "%g", r.settings.alpha);
  os << "# census order=4 n=" << r.n << " max_leader_len=" << r.max_len
     << " alphabet=" << alphabet_name(r.alphabet) << '\n';
  os << "# period alpha=" << alpha << " iterations=" << r.settings.iterations
     << " width=" << r.settings.width << " motif=" << symbols_or(r.settings.motif, "0,1,2,3")
     << " leaders=" << symbols_or(r.settings.leaders, "all") << '\n';
  os << "# fractal=" << r.fractal.size() << " non_fractal=" << r.non_fractal.size()
     << " published=" << published_fractal_list().size()
     << " published_stated=" << kPublishedFractalCount << '\n';
  os << "# missing_from_published=" << join(r.missing_from_published) << '\n';
  os << "# absent_from_computed=" << join(r.absent_from_computed) << '\n';
  os << "# classifier_disagreements=" << join(r.classifier_disagreements) << '\n';
  for (const CensusEntry& e : r.entries) {
    os << e.index << ' ' << label_name(e.permutation_class) << ' ' << witness_text(e.witness)
       << ' ' << e.final_period << '\n';
  }
  return os.str();
}

std::string format_census_json(const CensusReport& r) {
  nlohmann::ordered_json doc;
  doc["parameters"] = {
      {"order", 4},
      {"n", r.n},
      {"max_leader_len", r.max_len},
      {"alphabet", alphabet_name(r.alphabet)},
      {"alpha", r.settings.alpha},
      {"iterations", r.settings.iterations},
      {"width", r.settings.width},
      {"motif", r.settings.motif.empty() ? std::vector<int>{0, 1, 2, 3}
                                         : std::vector<int>(r.settings.motif.begin(),
                                                            r.settings.motif.end())},
      {"leaders", r.settings.leaders.empty()
                      ? nlohmann::ordered_json("all")
                      : nlohmann::ordered_json(std::vector<int>(r.settings.leaders.begin(),
                                                                r.settings.leaders.end()))},
  };
  doc["summary"] = {
      {"fractal", r.fractal.size()},
      {"non_fractal", r.non_fractal.size()},
      {"published", published_fractal_list().size()},
      {"published_stated", kPublishedFractalCount},
      {"missing_from_published", r.missing_from_published},
      {"absent_from_computed", r.absent_from_computed},
      {"classifier_disagreements", r.classifier_disagreements},
  };
  auto entries = nlohmann::ordered_json::array();
  for (const CensusEntry& e : r.entries) {
    nlohmann::ordered_json item;
    item["index"] = e.index;
    item["label"] = label_name(e.permutation_class);
    item["witness"] = e.witness ? nlohmann::ordered_json(format_leaders(*e.witness))
                                : nlohmann::ordered_json(nullptr);
    item["period"] = e.final_period;
    item["period_label"] = label_name(e.period_class);
    entries.push_back(std::move(item));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

std::vector<std::uint8_t> palette(std::size_t order) {
  std::vector<std::uint8_t> levels(order, 255);
  if (order < 2) return levels;
  for (std::size_t k = 0; k < order; ++k) {
    const std::size_t step = (255 * k + (order - 1) / 2) / (order - 1);
    levels[k] = static_cast<std::uint8_t>(255 - step);
  }
  return levels;
}

std::string render_iterations(const Quasigroup& q, Symbol leader, std::span<const Symbol> motif,
                              std::size_t width, std::size_t iterations,
                              PixmapEncoding encoding) {
  if (motif.empty() || width == 0 || width % motif.size() != 0) {
    throw Error(ErrorCode::LengthMismatch, "width " + std::to_string(width) +
                                               " is not a positive multiple of motif length " +
                                               std::to_string(motif.size()));
  }
  if (leader >= q.order()) throw Error(ErrorCode::OrderMismatch, "leader " + std::to_string(leader));
  for (Symbol x : motif) {
    if (x >= q.order()) throw Error(ErrorCode::OrderMismatch, "motif symbol " + std::to_string(x));
  }
  const auto levels = palette(q.order());
  const std::size_t height = iterations + 1;
  const bool binary = encoding == PixmapEncoding::Binary;

  std::string out = (binary ? "P6\n" : "P3\n") + std::to_string(width) + " " +
                    std::to_string(height) + "\n255\n";
  out.reserve(out.size() + width * height * (binary ? 3 : 12));

  QString row(width);
  for (std::size_t i = 0; i < width; ++i) row[i] = motif[i % motif.size()];
  for (std::size_t k = 0; k < height; ++k) {
    if (k) detail::e_transform_inplace(q, leader, row);
    for (std::size_t i = 0; i < width; ++i) {
      const std::uint8_t g = levels[row[i]];
      if (binary) {
        out.append(3, static_cast<char>(g));
      } else {
        const std::string v = std::to_string(g);
        for (int c = 0; c < 3; ++c) {
          out += v;
          out += (c == 2 && i + 1 == width) ? '\n' : ' ';
        }
      }
    }
  }
  return out;
}

std::vector<QString> decode_pixmap(std::string_view bytes, std::size_t order) {
  auto fail = [](const std::string& what) -> Error {
    return Error(ErrorCode::SyntaxError, "pixmap: " + what, 1);
  };
  // Header: magic, width, height, maxval, each separated by one whitespace run.
  std::size_t pos = 0;
  auto next_token = [&]() {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return bytes.substr(start, pos - start);
  };
  const std::string_view magic = next_token();
  if (magic != "P6" && magic != "P3") throw fail("unknown magic");
  std::uint64_t width = 0, height = 0, maxval = 0;
  if (!parse_uint(next_token(), width) || !parse_uint(next_token(), height) ||
      !parse_uint(next_token(), maxval) || maxval != 255 || width == 0) {
    throw fail("bad header");
  }

  const auto levels = palette(order);
  auto symbol_of = [&](std::uint64_t r, std::uint64_t g, std::uint64_t b) {
    if (r != g || g != b) throw fail("non-gray pixel");
    const auto it = std::find(levels.begin(), levels.end(), static_cast<std::uint8_t>(r));
    if (r > 255 || it == levels.end()) throw fail("color outside palette");
    return static_cast<Symbol>(it - levels.begin());
  };

  std::vector<QString> rows(height, QString(width));
  if (magic == "P6") {
    ++pos;  // single whitespace after maxval
    if (bytes.size() - std::min(pos, bytes.size()) != width * height * 3) throw fail("size mismatch");
    for (std::uint64_t k = 0; k < height; ++k) {
      for (std::uint64_t i = 0; i < width; ++i) {
        const auto* px = reinterpret_cast<const unsigned char*>(bytes.data() + pos);
        rows[k][i] = symbol_of(px[0], px[1], px[2]);
        pos += 3;
      }
    }
  } else {
    for (std::uint64_t k = 0; k < height; ++k) {
      for (std::uint64_t i = 0; i < width; ++i) {
        std::uint64_t c[3];
        for (auto& v : c) {
          if (!parse_uint(next_token(), v)) throw fail("bad sample");
        }
        rows[k][i] = symbol_of(c[0], c[1], c[2]);
      }
    }
  }
  return rows;
}

}  // namespace qows::io
