#include "qows/transforms.hpp"

#include <algorithm>
#include <string>

#include "qows/error.hpp"

namespace qows {

namespace {

void require_string(const Quasigroup& q, std::span<const Symbol> s) {
  if (s.empty()) throw Error(ErrorCode::EmptyString, "transformations need N >= 1");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= q.order()) {
      throw Error(ErrorCode::OrderMismatch, "symbol " + std::to_string(s[i]) + " at position " +
                                                std::to_string(i) + " for order " +
                                                std::to_string(q.order()));
    }
  }
}

void require_leader(const Quasigroup& q, Symbol leader) {
  if (leader >= q.order()) {
    throw Error(ErrorCode::OrderMismatch,
                "leader " + std::to_string(leader) + " for order " + std::to_string(q.order()));
  }
}

}  // namespace

OwfSpec OwfSpec::make(Quasigroup q, std::size_t n, LeaderString leaders) {
  if (n == 0) throw Error(ErrorCode::EmptyString, "R_N needs N >= 1");
  for (const Leader& l : leaders) {
    if (l.is_index()) {
      if (l.value >= n) {
        throw Error(ErrorCode::IndexLeaderOutOfRange,
                    "i" + std::to_string(l.value) + " with N=" + std::to_string(n));
      }
    } else if (l.value >= q.order()) {
      throw Error(ErrorCode::OrderMismatch, "constant leader " + std::to_string(l.value) +
                                                " for order " + std::to_string(q.order()));
    }
  }
  return OwfSpec{std::move(q), n, std::move(leaders)};
}

QString e_transform(const Quasigroup& q, Symbol leader, std::span<const Symbol> a) {
  require_leader(q, leader);
  require_string(q, a);
  QString b(a.begin(), a.end());
  detail::e_transform_inplace(q, leader, b);
  return b;
}

QString e_inverse(const Quasigroup& q, Symbol leader, std::span<const Symbol> b) {
  require_leader(q, leader);
  require_string(q, b);
  QString a(b.size());
  Symbol prev = leader;
  for (std::size_t i = 0; i < b.size(); ++i) {
    a[i] = q.ldiv_unchecked(prev, b[i]);
    prev = b[i];
  }
  return a;
}

QString apply_leader_sequence(const Quasigroup& q, std::span<const Symbol> leaders,
                              std::span<const Symbol> a) {
  require_string(q, a);
  for (Symbol l : leaders) require_leader(q, l);
  QString s(a.begin(), a.end());
  for (Symbol l : leaders) detail::e_transform_inplace(q, l, s);
  return s;
}

std::vector<Symbol> resolve_leaders(const OwfSpec& spec, std::span<const Symbol> a) {
  if (a.size() != spec.n) {
    throw Error(ErrorCode::LengthMismatch, "input length " + std::to_string(a.size()) +
                                               ", spec N=" + std::to_string(spec.n));
  }
  std::vector<Symbol> out;
  out.reserve(spec.leaders.size() + 2 * a.size());
  for (const Leader& l : spec.leaders) {
    if (l.is_index()) {
      if (l.value >= a.size()) {
        throw Error(ErrorCode::IndexLeaderOutOfRange,
                    "i" + std::to_string(l.value) + " with N=" + std::to_string(a.size()));
      }
      out.push_back(a[l.value]);
    } else {
      out.push_back(static_cast<Symbol>(l.value));
    }
  }
  for (int pass = 0; pass < 2; ++pass) out.insert(out.end(), a.rbegin(), a.rend());
  return out;
}

QString r1(const Quasigroup& q, std::span<const Symbol> a) {
  require_string(q, a);
  const std::vector<Symbol> leaders(a.rbegin(), a.rend());
  return apply_leader_sequence(q, leaders, a);
}

QString r2(const Quasigroup& q, std::span<const Symbol> a) {
  require_string(q, a);
  std::vector<Symbol> leaders(a.rbegin(), a.rend());
  leaders.insert(leaders.end(), a.rbegin(), a.rend());
  return apply_leader_sequence(q, leaders, a);
}

QString r_n(const OwfSpec& spec, std::span<const Symbol> a) {
  return apply_leader_sequence(spec.q, resolve_leaders(spec, a), a);
}

std::uint64_t domain_size(std::size_t order, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > UINT64_MAX / order) {
      throw Error(ErrorCode::BudgetExceeded, std::to_string(order) + "^" + std::to_string(n) +
                                                 " does not fit in 64 bits");
    }
    total *= order;
  }
  return total;
}

std::uint64_t pack(std::span<const Symbol> a, std::size_t order) {
  (void)domain_size(order, a.size());
  std::uint64_t v = 0;
  for (Symbol x : a) {
    if (x >= order) {
      throw Error(ErrorCode::OrderMismatch,
                  "symbol " + std::to_string(x) + " for order " + std::to_string(order));
    }
    v = v * order + x;
  }
  return v;
}

QString unpack(std::uint64_t value, std::size_t order, std::size_t length) {
  if (value >= domain_size(order, length)) {
    throw Error(ErrorCode::SymbolOutOfRange, "value " + std::to_string(value) + " outside " +
                                                 std::to_string(order) + "^" +
                                                 std::to_string(length));
  }
  QString a(length);
  for (std::size_t i = length; i-- > 0;) {
    a[i] = static_cast<Symbol>(value % order);
    value /= order;
  }
  return a;
}

}  // namespace qows
