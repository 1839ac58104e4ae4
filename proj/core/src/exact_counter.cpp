#include "monocount/exact_counter.hpp"

namespace monocount {

namespace detail {

CompatibilityIndex::CompatibilityIndex(const Formula& f)
    : m_(f.num_clauses()),
      mw_(std::max<std::size_t>(1, (f.num_clauses() + 63) / 64)),
      nw_((static_cast<std::size_t>(f.num_vars()) + 64) / 64),
      usable_(f.num_clauses()),
      compat_(m_ * mw_, 0),
      vars_(m_ * nw_, 0) {
  const auto& cs = f.clauses();
  // Per-variable sign masks turn the pairwise conflict test into word ops.
  std::vector<std::uint64_t> pos(m_ * nw_, 0);
  std::vector<std::uint64_t> neg(m_ * nw_, 0);
  for (std::size_t j = 0; j < m_; ++j) {
    usable_[j] = !cs[j].tautological();
    for (VarId v : cs[j].pos()) pos[j * nw_ + (index_of(v) >> 6)] |= std::uint64_t{1} << (index_of(v) & 63);
    for (VarId v : cs[j].neg()) neg[j * nw_ + (index_of(v) >> 6)] |= std::uint64_t{1} << (index_of(v) & 63);
    for (std::size_t k = 0; k < nw_; ++k) vars_[j * nw_ + k] = pos[j * nw_ + k] | neg[j * nw_ + k];
  }
  for (std::size_t a = 0; a < m_; ++a) {
    if (!usable_[a]) continue;
    for (std::size_t b = a + 1; b < m_; ++b) {
      if (!usable_[b]) continue;
      bool clash = false;
      for (std::size_t k = 0; k < nw_ && !clash; ++k) {
        clash = (pos[a * nw_ + k] & neg[b * nw_ + k]) || (neg[a * nw_ + k] & pos[b * nw_ + k]);
      }
      if (!clash) {
        compat_[a * mw_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
        compat_[b * mw_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
      }
    }
  }
}

}  // namespace detail

namespace {

struct LedgerTally {
  std::vector<std::uint64_t> odd;
  std::vector<std::uint64_t> even;
  std::uint64_t visited = 0;
  std::size_t max_size = 0;

  explicit LedgerTally(std::uint32_t n) : odd(n + 1, 0), even(n + 1, 0) {}

  void operator()(std::size_t size, std::uint32_t nu) {
    ++((size & 1U) ? odd : even)[nu];
    ++visited;
    max_size = std::max(max_size, size);
  }
};

struct DiffTally {
  std::vector<std::int64_t> diff;

  explicit DiffTally(std::uint32_t n) : diff(n + 1, 0) {}

  void operator()(std::size_t size, std::uint32_t nu) { diff[nu] += (size & 1U) ? 1 : -1; }
};

struct MaxTally {
  std::size_t max_size = 0;
  void operator()(std::size_t size, std::uint32_t) { max_size = std::max(max_size, size); }
};

CountReport tally(const Formula& formula, const CountOptions& options) {
  const std::uint32_t n = formula.num_vars();
  const auto parts =
      enumerate_monotone_parallel(formula, options.threads, LedgerTally(n), options.max_size);
  CountReport report;
  report.ledger = Ledger(n);
  for (const auto& t : parts) {
    report.visited += t.visited;
    report.max_size = std::max(report.max_size, t.max_size);
  }
  for (std::uint32_t nu = 1; nu <= n; ++nu) {
    BigCount odd = 0;
    BigCount even = 0;
    for (const auto& t : parts) {
      odd += t.odd[nu];
      even += t.even[nu];
    }
    report.ledger.add(nu, true, odd);
    report.ledger.add(nu, false, even);
  }
  return report;
}

void check_range(const BigInt& unsat, std::uint32_t n) {
  if (unsat < 0 || unsat > pow2(n)) {
    throw InconsistencyError("unsatisfying-assignment count " + unsat.str() +
                             " outside [0, 2^" + std::to_string(n) + "]");
  }
}

}  // namespace

Ledger build_ledger(const Formula& formula, const CountOptions& options) {
  return tally(formula, options).ledger;
}

BigInt signed_sum(const Ledger& ledger) {
  const std::uint32_t n = ledger.num_vars();
  BigInt sum = 0;
  for (const auto& [nu, e] : ledger.entries()) sum += (e.odd - e.even) * pow2(n - nu);
  return sum;
}

BigCount unsat_from_ledger(const Ledger& ledger) {
  BigInt u = signed_sum(ledger);
  check_range(u, ledger.num_vars());
  return u;
}

CountReport count_with_report(const Formula& formula, const CountOptions& options) {
  CountReport report = tally(formula, CountOptions{options.threads, std::nullopt});
  report.models = pow2(formula.num_vars()) - unsat_from_ledger(report.ledger);
  return report;
}

BigCount count_models(const Formula& formula, const CountOptions& options) {
  return count_with_report(formula, options).models;
}

BigCount unsat_fused(const Formula& formula, unsigned threads) {
  const std::uint32_t n = formula.num_vars();
  const auto parts = enumerate_monotone_parallel(formula, threads, DiffTally(n));
  BigInt u = 0;
  for (std::uint32_t nu = 1; nu <= n; ++nu) {
    BigInt d = 0;
    for (const auto& t : parts) d += t.diff[nu];
    if (d != 0) u += d * pow2(n - nu);
  }
  check_range(u, n);
  return u;
}

SignedPartial truncated_unsat(const Formula& formula, std::size_t r, unsigned threads) {
  if (r < 1) throw std::invalid_argument("truncated_unsat: r must be at least 1");
  const Ledger capped = tally(formula, CountOptions{threads, r}).ledger;
  return SignedPartial{signed_sum(capped), r};
}

std::size_t max_monotone_size(const Formula& formula, unsigned threads) {
  std::size_t best = 0;
  for (const auto& t : enumerate_monotone_parallel(formula, threads, MaxTally{})) {
    best = std::max(best, t.max_size);
  }
  return best;
}

}  // namespace monocount
