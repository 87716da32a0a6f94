#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qows/classification.hpp"
#include "qows/error.hpp"
#include "qows/inversion.hpp"
#include "qows/io.hpp"
#include "qows/quasigroup.hpp"
#include "qows/transforms.hpp"

namespace qows::cli {

namespace {

struct CommonFlags {
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::optional<std::uint64_t> budget;
  std::string out_path;
};

struct QuasigroupSource {
  std::string path;
  std::size_t lex = 0;
};

void add_common(CLI::App* sub, CommonFlags& c) {
  sub->add_option("--seed", c.seed, "Seed for every random draw")->capture_default_str();
  sub->add_option("--workers", c.workers, "Worker threads")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1024}))
      ->capture_default_str();
  sub->add_option("--budget", c.budget, "Evaluation / branch cap (default: QOWS_BUDGET or 2^24)");
  sub->add_option("--out", c.out_path, "Write the report to FILE instead of stdout");
}

void add_quasigroup(CLI::App* sub, QuasigroupSource& src, bool required = true) {
  auto* group = sub->add_option_group("quasigroup");
  group->add_option("--quasigroup,-q", src.path, "Quasigroup file (.qg)");
  group->add_option("--lex", src.lex, "Order-4 quasigroup by lexicographic number")
      ->check(CLI::Range(1, 576));
  if (required) group->require_option(1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SyntaxError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Quasigroup load(const QuasigroupSource& src) {
  if (src.lex) return order4_by_index(src.lex);
  return io::parse_quasigroup(read_file(src.path));
}

std::string describe(const QuasigroupSource& src) {
  return src.lex ? "lex:" + std::to_string(src.lex) : src.path;
}

std::uint64_t effective_budget(const CommonFlags& c) {
  if (c.budget) return *c.budget;
  if (const char* env = std::getenv("QOWS_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::SyntaxError, std::string("QOWS_BUDGET='") + env + "' is not an integer");
    }
  }
  return kDefaultBudget;
}

// "# qows <cmd> key=value ..." echo of the effective configuration.
class Header {
 public:
  explicit Header(std::string cmd) { line_ = "# qows " + std::move(cmd); }
  template <typename T>
  Header& add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << value;
    line_ += " " + key + "=" + (os.str().empty() ? "\"\"" : os.str());
    return *this;
  }
  [[nodiscard]] std::string str() const { return line_ + "\n"; }

 private:
  std::string line_;
};

Header common_header(const std::string& cmd, const CommonFlags& c) {
  Header h(cmd);
  h.add("seed", c.seed).add("workers", c.workers).add("budget", effective_budget(c));
  return h;
}

void emit(const CommonFlags& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::SyntaxError, "cannot write '" + c.out_path + "'");
  f << text;
}

std::vector<Symbol> constants_only(const LeaderString& leaders, const char* what) {
  std::vector<Symbol> out;
  for (const Leader& l : leaders) {
    if (l.is_index()) {
      throw Error(ErrorCode::IndexLeaderOutOfRange,
                  std::string(what) + " takes constant leaders only");
    }
    out.push_back(static_cast<Symbol>(l.value));
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qows: quasigroup string transformations, candidate one-way functions and their inversion"};
  app.name(args.empty() ? "qows" : args[0]);
  app.require_subcommand(1);

  // transform
  CommonFlags tf_common;
  QuasigroupSource tf_q;
  std::string tf_fn = "e";
  std::string tf_input;
  int tf_leader = 0;
  std::string tf_leaders;
  std::size_t tf_iterations = 1;
  auto* transform = app.add_subcommand("transform", "Apply e, e-inverse, E, r1, r2 or rN to a string");
  add_common(transform, tf_common);
  add_quasigroup(transform, tf_q);
  transform->add_option("--fn", tf_fn, "Function")
      ->check(CLI::IsMember({"e", "e-inverse", "E", "r1", "r2", "rN"}))
      ->capture_default_str();
  transform->add_option("--input", tf_input, "Input string, e.g. \"01230\" or \"0 1 2 3 0\"")->required();
  transform->add_option("--leader", tf_leader, "Leader for e / e-inverse")->capture_default_str();
  transform->add_option("--leaders", tf_leaders, "Leader string for E / rN, e.g. \"3,3,i1,i0\"");
  transform->add_option("--iterations", tf_iterations, "Repeat e / e-inverse this many times")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // invert
  CommonFlags inv_common;
  QuasigroupSource inv_q;
  std::string inv_method = "brute";
  std::size_t inv_n = 0;
  std::string inv_leaders;
  std::string inv_output;
  std::optional<std::uint64_t> inv_value;
  bool inv_first_hit = false;
  bool inv_no_timing = false;
  auto* invert = app.add_subcommand("invert", "Find preimages by brute force or lookup-table attack");
  add_common(invert, inv_common);
  add_quasigroup(invert, inv_q);
  invert->add_option("--method", inv_method, "Inversion method")
      ->check(CLI::IsMember({"brute", "brute-r1", "attack-r1", "attack-r2", "attack-rn"}))
      ->capture_default_str();
  invert->add_option("--N", inv_n, "Input length (implied by --output)");
  invert->add_option("--leaders", inv_leaders, "Leader string of the R_N member (brute, attack-rn)");
  auto* out_group = invert->add_option_group("target");
  out_group->add_option("--output", inv_output, "Target string B");
  out_group->add_option("--output-value", inv_value, "Target as a packed base-s integer");
  out_group->require_option(1);
  invert->add_flag("--first-hit", inv_first_hit, "Stop at the first preimage (attacks)");
  invert->add_flag("--no-timing", inv_no_timing, "Write elapsed_ms 0");

  // histogram
  CommonFlags hist_common;
  QuasigroupSource hist_q;
  std::size_t hist_n = 2;
  std::string hist_leaders;
  bool hist_full = false;
  auto* histogram = app.add_subcommand("histogram", "Preimage counts of an R_N member");
  add_common(histogram, hist_common);
  add_quasigroup(histogram, hist_q);
  histogram->add_option("--N", hist_n, "Input length")->check(CLI::PositiveNumber)->capture_default_str();
  histogram->add_option("--leaders", hist_leaders, "Leader string");
  histogram->add_flag("--full", hist_full, "List the count of every output value");

  // search
  CommonFlags search_common;
  QuasigroupSource search_q;
  std::size_t search_n = 2;
  std::size_t search_max = 4;
  bool search_indices = false;
  auto* search = app.add_subcommand("search", "Bounded search for a permutation-inducing leader string");
  add_common(search, search_common);
  add_quasigroup(search, search_q);
  search->add_option("--N", search_n, "Input length")->check(CLI::PositiveNumber)->capture_default_str();
  search->add_option("--max-leader-len", search_max, "Longest leader string tried")->capture_default_str();
  search->add_flag("--index-leaders", search_indices, "Also try index leaders i_j");

  // census
  CommonFlags census_common;
  std::size_t census_n = 2;
  std::size_t census_max = 4;
  bool census_indices = false;
  std::string census_format = "text";
  auto* census = app.add_subcommand("census", "Classify all 576 order-4 quasigroups");
  add_common(census, census_common);
  census->add_option("--N", census_n, "Input length")->check(CLI::PositiveNumber)->capture_default_str();
  census->add_option("--max-leader-len", census_max, "Longest leader string tried")->capture_default_str();
  census->add_flag("--index-leaders", census_indices, "Also try index leaders i_j");
  census->add_option("--format", census_format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // classify
  CommonFlags cls_common;
  QuasigroupSource cls_q;
  ClassifySettings cls_settings;
  std::vector<int> cls_leaders;
  std::string cls_motif;
  bool cls_no_search = false;
  bool cls_indices = false;
  auto* classify_cmd = app.add_subcommand("classify", "Period-growth (fractal) classifier");
  add_common(classify_cmd, cls_common);
  add_quasigroup(classify_cmd, cls_q);
  classify_cmd->add_option("--alpha", cls_settings.alpha, "Growth factor")->capture_default_str();
  classify_cmd->add_option("--iterations", cls_settings.iterations, "K")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  classify_cmd->add_option("--width", cls_settings.width, "String width")->capture_default_str();
  classify_cmd->add_option("--leader", cls_leaders, "Leader(s) to check (default: all)");
  classify_cmd->add_option("--motif", cls_motif, "Periodic motif (default 0..s-1)");
  classify_cmd->add_flag("--no-search", cls_no_search, "Skip the permutation search");
  classify_cmd->add_option("--N", cls_settings.search_n, "Permutation search input length")
      ->capture_default_str();
  classify_cmd->add_option("--max-leader-len", cls_settings.search_max_len, "Permutation search bound")
      ->capture_default_str();
  classify_cmd->add_flag("--index-leaders", cls_indices, "Permutation search also tries i_j");

  // render
  CommonFlags render_common;
  QuasigroupSource render_q;
  int render_leader = 0;
  std::string render_motif;
  std::size_t render_width = 600;
  std::size_t render_iterations = 599;
  bool render_text = false;
  auto* render = app.add_subcommand("render", "Portable pixmap of iterated e-transformations");
  add_common(render, render_common);
  add_quasigroup(render, render_q);
  render->add_option("--leader", render_leader, "Leader")->capture_default_str();
  render->add_option("--motif", render_motif, "Periodic motif (default 0..s-1)");
  render->add_option("--width", render_width, "Image width")->capture_default_str();
  render->add_option("--iterations", render_iterations, "Iterations (height - 1)")->capture_default_str();
  render->add_flag("--text", render_text, "Text pixmap (P3) instead of binary (P6)");

  // gen
  CommonFlags gen_common;
  std::size_t gen_order = 4;
  auto* gen = app.add_subcommand("gen", "Deterministic random Latin square");
  add_common(gen, gen_common);
  gen->add_option("--order", gen_order, "Order s")
      ->check(CLI::Range(std::size_t{1}, kMaxOrder))
      ->capture_default_str();

  try {
    std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rev.begin(), rev.end());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << "\n\n";
    const CLI::App* failing = &app;
    for (const CLI::App* s : app.get_subcommands()) failing = s;
    err << failing->help();
    return 2;
  }

  try {
    if (*transform) {
      const Quasigroup q = load(tf_q);
      const QString input = io::parse_string(tf_input, q.order());
      QString result;
      if (tf_fn == "e" || tf_fn == "e-inverse") {
        if (tf_leader < 0 || static_cast<std::size_t>(tf_leader) >= q.order()) {
          throw Error(ErrorCode::OrderMismatch, "leader " + std::to_string(tf_leader));
        }
        result = input;
        for (std::size_t k = 0; k < tf_iterations; ++k) {
          result = tf_fn == "e" ? e_transform(q, static_cast<Symbol>(tf_leader), result)
                                : e_inverse(q, static_cast<Symbol>(tf_leader), result);
        }
      } else if (tf_fn == "E") {
        result = apply_leader_sequence(q, constants_only(io::parse_leaders(tf_leaders), "E"), input);
      } else if (tf_fn == "r1") {
        result = r1(q, input);
      } else if (tf_fn == "r2") {
        result = r2(q, input);
      } else {
        const OwfSpec spec = OwfSpec::make(q, input.size(), io::parse_leaders(tf_leaders));
        result = r_n(spec, input);
      }
      emit(tf_common, io::format_string_compact(result, q.order()) + "\n", out);
      return 0;
    }

    if (*invert) {
      const Quasigroup q = load(inv_q);
      QString target;
      if (inv_value) {
        if (inv_n == 0) throw Error(ErrorCode::LengthMismatch, "--output-value needs --N");
        target = unpack(*inv_value, q.order(), inv_n);
      } else {
        target = io::parse_string(inv_output, q.order());
        if (inv_n != 0 && inv_n != target.size()) {
          throw Error(ErrorCode::LengthMismatch, "--N " + std::to_string(inv_n) +
                                                     " but target has length " +
                                                     std::to_string(target.size()));
        }
      }
      const std::uint64_t budget = effective_budget(inv_common);
      const LeaderString leaders = io::parse_leaders(inv_leaders);
      if (!leaders.empty() && inv_method != "brute" && inv_method != "attack-rn") {
        throw Error(ErrorCode::IndexLeaderOutOfRange, "--leaders applies to brute and attack-rn only");
      }
      AttackTrace trace;
      const AttackOptions attack_opts{budget, inv_first_hit};
      const SearchOptions search_opts{budget, inv_common.workers};
      if (inv_method == "brute") {
        trace = brute_preimages(OwfSpec::make(q, target.size(), leaders), target, search_opts);
      } else if (inv_method == "brute-r1") {
        trace = brute_preimages_r1(q, target, search_opts);
      } else if (inv_method == "attack-r1") {
        trace = attack_r1(q, target, attack_opts);
      } else if (inv_method == "attack-r2") {
        trace = attack_r2(q, target, attack_opts);
      } else {
        trace = attack_rn(OwfSpec::make(q, target.size(), leaders), target, attack_opts);
      }
      std::string text = common_header("invert", inv_common)
                             .add("method", inv_method)
                             .add("quasigroup", describe(inv_q))
                             .add("N", target.size())
                             .add("leaders", io::format_leaders(leaders))
                             .add("target", io::format_string_compact(target, q.order()))
                             .add("first_hit", yes_no(inv_first_hit))
                             .str();
      for (const auto& w : trace.warnings) text += "# warning: " + w + "\n";
      text += io::format_attack_record(
          trace, io::RecordStyle{inv_value.has_value(), !inv_no_timing, q.order()});
      emit(inv_common, text, out);
      return 0;
    }

    if (*histogram) {
      const Quasigroup q = load(hist_q);
      const OwfSpec spec = OwfSpec::make(q, hist_n, io::parse_leaders(hist_leaders));
      const PreimageHistogram h =
          preimage_histogram(spec, SearchOptions{effective_budget(hist_common), hist_common.workers});
      std::string text = common_header("histogram", hist_common)
                             .add("quasigroup", describe(hist_q))
                             .add("N", hist_n)
                             .add("leaders", io::format_leaders(spec.leaders))
                             .str();
      text += "domain_size " + std::to_string(h.domain_size) + "\n";
      text += "image_size " + std::to_string(h.image_size()) + "\n";
      text += "permutation " + yes_no(h.is_permutation()) + "\n";
      text += "regular " + yes_no(h.is_regular()) + "\n";
      std::map<std::uint64_t, std::uint64_t> fibers;
      for (std::uint64_t c : h.counts) ++fibers[c];
      for (const auto& [size, outputs] : fibers) {
        text += "fiber " + std::to_string(size) + " " + std::to_string(outputs) + "\n";
      }
      if (hist_full) {
        for (std::uint64_t v = 0; v < h.counts.size(); ++v) {
          text += "value " + std::to_string(v) + " " + std::to_string(h.counts[v]) + "\n";
        }
      }
      emit(hist_common, text, out);
      return 0;
    }

    if (*search) {
      const Quasigroup q = load(search_q);
      const auto alphabet =
          search_indices ? LeaderAlphabet::ConstantsAndIndices : LeaderAlphabet::Constants;
      const auto witness =
          permutation_search(q, search_n, search_max, alphabet, effective_budget(search_common));
      std::string text = common_header("search", search_common)
                             .add("quasigroup", describe(search_q))
                             .add("N", search_n)
                             .add("max_leader_len", search_max)
                             .add("index_leaders", yes_no(search_indices))
                             .str();
      text += "witness ";
      text += witness ? (witness->empty() ? "()" : io::format_leaders(*witness)) : "-";
      text += "\n";
      emit(search_common, text, out);
      return 0;
    }

    if (*census) {
      const auto alphabet =
          census_indices ? LeaderAlphabet::ConstantsAndIndices : LeaderAlphabet::Constants;
      const CensusReport report =
          census_order4(census_n, census_max, alphabet, census_common.workers);
      std::string text;
      if (census_format == "json") {
        text = io::format_census_json(report);
      } else {
        text = common_header("census", census_common)
                   .add("N", census_n)
                   .add("max_leader_len", census_max)
                   .add("index_leaders", yes_no(census_indices))
                   .str();
        text += io::format_census_text(report);
      }
      emit(census_common, text, out);
      return 0;
    }

    if (*classify_cmd) {
      const Quasigroup q = load(cls_q);
      for (int l : cls_leaders) {
        if (l < 0 || static_cast<std::size_t>(l) >= q.order()) {
          throw Error(ErrorCode::OrderMismatch, "leader " + std::to_string(l));
        }
        cls_settings.leaders.push_back(static_cast<Symbol>(l));
      }
      if (!cls_motif.empty()) cls_settings.motif = io::parse_string(cls_motif, q.order());
      cls_settings.search_permutation = !cls_no_search;
      cls_settings.search_alphabet =
          cls_indices ? LeaderAlphabet::ConstantsAndIndices : LeaderAlphabet::Constants;
      const ClassLabel label = classify(q, cls_settings);
      std::string text = common_header("classify", cls_common)
                             .add("quasigroup", describe(cls_q))
                             .add("alpha", cls_settings.alpha)
                             .add("iterations", cls_settings.iterations)
                             .add("width", cls_settings.width)
                             .str();
      text += "label " + std::string(io::label_name(label.label)) + "\n";
      if (label.permutation_searched) {
        text += "permutation_label " + std::string(io::label_name(label.permutation_label())) + "\n";
        const auto& w = label.permutation_witness;
        text += "witness " + (w ? (w->empty() ? std::string("()") : io::format_leaders(*w)) : "-") + "\n";
      }
      for (const PeriodProfile& p : label.profiles) {
        text += "periods leader=" + std::to_string(p.leader);
        for (const PeriodSample& s : p.samples) {
          text += " " + std::to_string(s.period) + (s.capped ? "*" : "");
        }
        text += "\n";
      }
      emit(cls_common, text, out);
      return 0;
    }

    if (*render) {
      const Quasigroup q = load(render_q);
      QString motif;
      if (render_motif.empty()) {
        for (std::size_t k = 0; k < q.order(); ++k) motif.push_back(static_cast<Symbol>(k));
      } else {
        motif = io::parse_string(render_motif, q.order());
      }
      if (render_leader < 0 || static_cast<std::size_t>(render_leader) >= q.order()) {
        throw Error(ErrorCode::OrderMismatch, "leader " + std::to_string(render_leader));
      }
      emit(render_common,
           io::render_iterations(q, static_cast<Symbol>(render_leader), motif, render_width,
                                 render_iterations,
                                 render_text ? io::PixmapEncoding::Text : io::PixmapEncoding::Binary),
           out);
      return 0;
    }

    if (*gen) {
      const Quasigroup q = random_latin(gen_order, gen_common.seed);
      emit(gen_common,
           common_header("gen", gen_common).add("order", gen_order).str() + io::serialize_quasigroup(q),
           out);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace qows::cli
