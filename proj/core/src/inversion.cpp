#include "qows/inversion.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "qows/error.hpp"
#include "qows/parallel.hpp"

namespace qows {

// ---------------------------------------------------------------------------
// AttackGrid

AttackGrid::AttackGrid(const Quasigroup& q, std::vector<StepLeader> steps,
                       std::span<const Symbol> b)
    : q_(&q), steps_(std::move(steps)), width_(b.size()) {
  if (b.empty()) throw Error(ErrorCode::EmptyString, "attack target must be nonempty");
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] >= q.order()) {
      throw Error(ErrorCode::OrderMismatch, "target symbol " + std::to_string(b[j]) +
                                                " at position " + std::to_string(j));
    }
  }
  const std::size_t rows = steps_.size() + 1;
  cells_.assign(rows * width_, -1);
  watchers_.resize(rows * width_);
  queued_.assign(steps_.size() * width_, false);

  for (std::size_t i = 1; i < rows; ++i) {
    const StepLeader& lead = steps_[i - 1];
    if (lead.from_input && lead.input_pos >= width_) {
      throw Error(ErrorCode::IndexLeaderOutOfRange, "step " + std::to_string(i) + " reads a_" +
                                                        std::to_string(lead.input_pos));
    }
    for (std::size_t j = 0; j < width_; ++j) {
      Equation eq{};
      if (j == 0) {
        eq.left = lead.from_input ? id(0, lead.input_pos) : -1;
        eq.left_constant = lead.constant;
      } else {
        eq.left = id(i, j - 1);
      }
      eq.right = id(i - 1, j);
      eq.result = id(i, j);
      const int e = static_cast<int>(equations_.size());
      equations_.push_back(eq);
      if (eq.left >= 0) watchers_[static_cast<std::size_t>(eq.left)].push_back(e);
      watchers_[static_cast<std::size_t>(eq.right)].push_back(e);
      watchers_[static_cast<std::size_t>(eq.result)].push_back(e);
    }
  }
  for (std::size_t j = 0; j < width_; ++j) {
    cells_[static_cast<std::size_t>(id(steps_.size(), j))] = b[j];
    trail_.push_back(id(steps_.size(), j));
  }
}

std::vector<AttackGrid::StepLeader> AttackGrid::r1_steps(std::size_t n) {
  std::vector<StepLeader> steps;
  steps.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) steps.push_back({true, 0, n - i});
  return steps;
}

std::vector<AttackGrid::StepLeader> AttackGrid::r2_steps(std::size_t n) {
  auto steps = r1_steps(n);
  const auto again = r1_steps(n);
  steps.insert(steps.end(), again.begin(), again.end());
  return steps;
}

std::vector<AttackGrid::StepLeader> AttackGrid::rn_steps(const OwfSpec& spec) {
  std::vector<StepLeader> steps;
  for (const Leader& l : spec.leaders) {
    if (l.is_index()) {
      steps.push_back({true, 0, l.value});
    } else {
      steps.push_back({false, static_cast<Symbol>(l.value), 0});
    }
  }
  const auto tail = r2_steps(spec.n);
  steps.insert(steps.end(), tail.begin(), tail.end());
  return steps;
}

std::optional<Symbol> AttackGrid::cell(std::size_t row, std::size_t col) const {
  if (row > steps_.size() || col >= width_) return std::nullopt;
  const auto v = cells_[static_cast<std::size_t>(id(row, col))];
  if (v < 0) return std::nullopt;
  return static_cast<Symbol>(v);
}

std::optional<Symbol> AttackGrid::leader(std::size_t row) const {
  if (row == 0 || row > steps_.size()) return std::nullopt;
  const StepLeader& lead = steps_[row - 1];
  if (!lead.from_input) return lead.constant;
  return cell(0, lead.input_pos);
}

bool AttackGrid::set(int cell_id, Symbol value) {
  auto& slot = cells_[static_cast<std::size_t>(cell_id)];
  if (slot >= 0) return slot == value;
  slot = value;
  trail_.push_back(cell_id);
  for (int e : watchers_[static_cast<std::size_t>(cell_id)]) {
    if (!queued_[static_cast<std::size_t>(e)]) {
      queued_[static_cast<std::size_t>(e)] = true;
      queue_.push_back(e);
    }
  }
  return true;
}

bool AttackGrid::drain() {
  const Quasigroup& q = *q_;
  bool consistent = true;
  // FIFO over a growing vector; `head` indexes the next pending equation.
  std::size_t head = 0;
  while (head < queue_.size()) {
    const int e = queue_[head++];
    queued_[static_cast<std::size_t>(e)] = false;
    if (!consistent) continue;
    const Equation& eq = equations_[static_cast<std::size_t>(e)];
    const int x = eq.left < 0 ? eq.left_constant : cells_[static_cast<std::size_t>(eq.left)];
    const int y = cells_[static_cast<std::size_t>(eq.right)];
    const int z = cells_[static_cast<std::size_t>(eq.result)];
    const int unknown = (x < 0) + (y < 0) + (z < 0);
    if (unknown > 1) continue;
    ++lookups_;
    const auto sx = static_cast<Symbol>(x);
    const auto sy = static_cast<Symbol>(y);
    const auto sz = static_cast<Symbol>(z);
    if (unknown == 0) {
      consistent = q.mul_unchecked(sx, sy) == sz;
    } else if (z < 0) {
      consistent = set(eq.result, q.mul_unchecked(sx, sy));
    } else if (y < 0) {
      consistent = set(eq.right, q.ldiv_unchecked(sx, sz));
    } else {
      consistent = set(eq.left, q.rdiv_unchecked(sy, sz));
    }
  }
  queue_.clear();
  return consistent;
}

bool AttackGrid::propagate_all() {
  for (std::size_t e = 0; e < equations_.size(); ++e) {
    if (!queued_[e]) {
      queued_[e] = true;
      queue_.push_back(static_cast<int>(e));
    }
  }
  return drain();
}

bool AttackGrid::assign_input(std::size_t pos, Symbol value) {
  if (pos >= width_ || value >= q_->order()) {
    throw Error(ErrorCode::SymbolOutOfRange, "a_" + std::to_string(pos) + " = " +
                                                 std::to_string(value));
  }
  if (!set(id(0, pos), value)) return false;
  return drain();
}

std::optional<std::size_t> AttackGrid::first_unknown_input() const {
  for (std::size_t j = 0; j < width_; ++j) {
    if (cells_[j] < 0) return j;
  }
  return std::nullopt;
}

QString AttackGrid::input() const {
  QString a(width_);
  for (std::size_t j = 0; j < width_; ++j) a[j] = static_cast<Symbol>(cells_[j]);
  return a;
}

void AttackGrid::rewind(std::size_t to) {
  while (trail_.size() > to) {
    cells_[static_cast<std::size_t>(trail_.back())] = -1;
    trail_.pop_back();
  }
}

// ---------------------------------------------------------------------------
// Exhaustive evaluation

namespace {

using Clock = std::chrono::steady_clock;

void require_target(const OwfSpec& spec, std::span<const Symbol> b) {
  if (b.size() != spec.n) {
    throw Error(ErrorCode::LengthMismatch, "target length " + std::to_string(b.size()) +
                                               ", spec N=" + std::to_string(spec.n));
  }
  for (Symbol x : b) {
    if (x >= spec.q.order()) {
      throw Error(ErrorCode::OrderMismatch, "target symbol " + std::to_string(x));
    }
  }
}

std::uint64_t checked_domain(std::size_t order, std::size_t n, std::uint64_t budget) {
  const std::uint64_t total = domain_size(order, n);
  if (total > budget) {
    throw Error(ErrorCode::BudgetExceeded, std::to_string(order) + "^" + std::to_string(n) +
                                               " = " + std::to_string(total) +
                                               " evaluations exceed budget " +
                                               std::to_string(budget));
  }
  return total;
}

// Reusable R_N evaluation without per-call allocation.
class Evaluator {
 public:
  explicit Evaluator(const OwfSpec& spec) : spec_(spec) {
    leaders_.resize(spec.leaders.size() + 2 * spec.n);
    work_.resize(spec.n);
    for (std::size_t k = 0; k < spec.leaders.size(); ++k) {
      if (!spec.leaders[k].is_index()) leaders_[k] = static_cast<Symbol>(spec.leaders[k].value);
    }
  }

  std::span<const Symbol> operator()(std::span<const Symbol> a) {
    const std::size_t lead = spec_.leaders.size();
    const std::size_t n = spec_.n;
    for (std::size_t k = 0; k < lead; ++k) {
      if (spec_.leaders[k].is_index()) leaders_[k] = a[spec_.leaders[k].value];
    }
    for (std::size_t j = 0; j < n; ++j) {
      leaders_[lead + j] = a[n - 1 - j];
      leaders_[lead + n + j] = a[n - 1 - j];
    }
    std::copy(a.begin(), a.end(), work_.begin());
    for (Symbol l : leaders_) detail::e_transform_inplace(spec_.q, l, work_);
    return work_;
  }

  [[nodiscard]] std::uint64_t lookups_per_call() const noexcept {
    return static_cast<std::uint64_t>(leaders_.size()) * spec_.n;
  }

 private:
  const OwfSpec& spec_;
  std::vector<Symbol> leaders_;
  QString work_;
};

// Advances `a` to the next string in base-s counting order.
void increment(QString& a, std::size_t order) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (++a[i] < order) return;
    a[i] = 0;
  }
}

template <typename Fn>
AttackTrace exhaustive(const OwfSpec& spec, std::span<const Symbol> b,
                       const SearchOptions& options, Fn&& make_eval, std::uint64_t lookups_per) {
  const auto start = Clock::now();
  const std::uint64_t total = checked_domain(spec.q.order(), spec.n, options.budget);
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  std::vector<std::vector<QString>> found(workers);

  parallel_ranges(total, workers, [&](std::uint64_t begin, std::uint64_t end, std::size_t slot) {
    if (begin == end) return;
    auto eval = make_eval();
    QString a = unpack(begin, spec.q.order(), spec.n);
    for (std::uint64_t k = begin; k < end; ++k) {
      const auto out = eval(a);
      if (std::equal(out.begin(), out.end(), b.begin(), b.end())) found[slot].push_back(a);
      increment(a, spec.q.order());
    }
  });

  AttackTrace trace;
  for (auto& part : found) {
    trace.preimages.insert(trace.preimages.end(), std::make_move_iterator(part.begin()),
                           std::make_move_iterator(part.end()));
  }
  trace.guesses = total;
  trace.lookups = total * lookups_per;
  trace.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return trace;
}

}  // namespace

AttackTrace brute_preimages(const OwfSpec& spec, std::span<const Symbol> b,
                            const SearchOptions& options) {
  require_target(spec, b);
  const std::uint64_t per = Evaluator(spec).lookups_per_call();
  return exhaustive(spec, b, options, [&] { return Evaluator(spec); }, per);
}

AttackTrace brute_preimages_r1(const Quasigroup& q, std::span<const Symbol> b,
                               const SearchOptions& options) {
  // R1 has no leading constants and a single reverse pass; evaluate it directly.
  const OwfSpec spec = OwfSpec::make(q, b.size());
  require_target(spec, b);
  struct R1Eval {
    const Quasigroup* q;
    QString work;
    std::span<const Symbol> operator()(std::span<const Symbol> a) {
      std::copy(a.begin(), a.end(), work.begin());
      for (std::size_t j = a.size(); j-- > 0;) detail::e_transform_inplace(*q, a[j], work);
      return work;
    }
  };
  return exhaustive(spec, b, options, [&] { return R1Eval{&q, QString(b.size())}; },
                    static_cast<std::uint64_t>(b.size()) * b.size());
}

// ---------------------------------------------------------------------------
// Lookup-table attacks

namespace {

std::vector<std::string> hypothesis_warnings(const Quasigroup& q) {
  std::vector<std::string> out;
  const AlgebraicProfile p = algebraic_probe(q);
  if (p.commutative) out.emplace_back("quasigroup is commutative; attack hypotheses do not hold");
  if (p.associative) out.emplace_back("quasigroup is associative; attack hypotheses do not hold");
  return out;
}

template <typename Forward>
AttackTrace grid_attack(const Quasigroup& q, std::vector<AttackGrid::StepLeader> steps,
                        std::span<const Symbol> b, const AttackOptions& options,
                        Forward&& forward) {
  const auto start = Clock::now();
  AttackTrace trace;
  trace.warnings = hypothesis_warnings(q);
  AttackGrid grid(q, std::move(steps), b);
  std::uint64_t verify_lookups = 0;
  const auto s = static_cast<unsigned>(q.order());

  bool done = false;
  auto close_leaf = [&] {
    if (++trace.guesses > options.budget) {
      throw Error(ErrorCode::BudgetExceeded,
                  "explored more than " + std::to_string(options.budget) + " guess branches");
    }
  };

  // Depth-first over the next unknown input position, symbols ascending.
  auto search = [&](auto&& self) -> void {
    const auto pos = grid.first_unknown_input();
    if (!pos) {
      close_leaf();
      QString candidate = grid.input();
      const QString image = forward(candidate);
      verify_lookups += static_cast<std::uint64_t>(grid.steps()) * candidate.size();
      if (std::equal(image.begin(), image.end(), b.begin(), b.end())) {
        trace.preimages.push_back(std::move(candidate));
        if (options.first_hit) done = true;
      }
      return;
    }
    for (unsigned v = 0; v < s && !done; ++v) {
      const std::size_t mark = grid.mark();
      if (grid.assign_input(*pos, static_cast<Symbol>(v))) {
        self(self);
      } else {
        close_leaf();
      }
      grid.rewind(mark);
    }
  };

  if (grid.propagate_all()) {
    search(search);
  } else {
    close_leaf();
  }
  std::sort(trace.preimages.begin(), trace.preimages.end());
  trace.lookups = grid.lookups() + verify_lookups;
  trace.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return trace;
}

}  // namespace

AttackTrace attack_r1(const Quasigroup& q, std::span<const Symbol> b,
                      const AttackOptions& options) {
  return grid_attack(q, AttackGrid::r1_steps(b.size()), b, options,
                     [&](const QString& a) { return r1(q, a); });
}

AttackTrace attack_r2(const Quasigroup& q, std::span<const Symbol> b,
                      const AttackOptions& options) {
  return grid_attack(q, AttackGrid::r2_steps(b.size()), b, options,
                     [&](const QString& a) { return r2(q, a); });
}

AttackTrace attack_rn(const OwfSpec& spec, std::span<const Symbol> b,
                      const AttackOptions& options) {
  require_target(spec, b);
  return grid_attack(spec.q, AttackGrid::rn_steps(spec), b, options,
                     [&](const QString& a) { return r_n(spec, a); });
}

// ---------------------------------------------------------------------------
// Histograms

bool PreimageHistogram::is_permutation() const {
  return std::all_of(counts.begin(), counts.end(), [](std::uint64_t c) { return c == 1; });
}

bool PreimageHistogram::is_regular() const {
  std::uint64_t level = 0;
  for (std::uint64_t c : counts) {
    if (c == 0) continue;
    if (level == 0) level = c;
    if (c != level) return false;
  }
  return true;
}

std::uint64_t PreimageHistogram::image_size() const {
  return static_cast<std::uint64_t>(
      std::count_if(counts.begin(), counts.end(), [](std::uint64_t c) { return c != 0; }));
}

std::uint64_t PreimageHistogram::total() const {
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts) sum += c;
  return sum;
}

PreimageHistogram preimage_histogram(const OwfSpec& spec, const SearchOptions& options) {
  const std::size_t order = spec.q.order();
  const std::uint64_t total = checked_domain(order, spec.n, options.budget);
  PreimageHistogram hist;
  hist.order = order;
  hist.n = spec.n;
  hist.domain_size = total;
  hist.counts.assign(total, 0);

  parallel_ranges(total, options.workers,
                  [&](std::uint64_t begin, std::uint64_t end, std::size_t) {
                    if (begin == end) return;
                    Evaluator eval(spec);
                    QString a = unpack(begin, order, spec.n);
                    for (std::uint64_t k = begin; k < end; ++k) {
                      const auto out = eval(a);
                      std::uint64_t v = 0;
                      for (Symbol x : out) v = v * order + x;
                      std::atomic_ref<std::uint64_t>(hist.counts[v]).fetch_add(
                          1, std::memory_order_relaxed);
                      increment(a, order);
                    }
                  });
  return hist;
}

bool is_permutation(const OwfSpec& spec, std::uint64_t budget) {
  const std::size_t order = spec.q.order();
  const std::uint64_t total = checked_domain(order, spec.n, budget);
  std::vector<bool> hit(total, false);
  Evaluator eval(spec);
  QString a(spec.n, 0);
  for (std::uint64_t k = 0; k < total; ++k) {
    const auto out = eval(a);
    std::uint64_t v = 0;
    for (Symbol x : out) v = v * order + x;
    if (hit[v]) return false;
    hit[v] = true;
    increment(a, order);
  }
  return true;
}

}  // namespace qows
