#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "monocount/formula.hpp"
#include "monocount/ledger.hpp"

namespace monocount {

/// Inclusion-exclusion partial sum over monotone sub-formulae of size <= depth.
struct SignedPartial {
  BigInt value;
  std::size_t depth = 0;
};

struct CountOptions {
  /// Worker threads; 0 is treated as 1.
  unsigned threads = 1;
  /// Only sub-formulae with at most this many clauses are tallied.
  std::optional<std::size_t> max_size;
};

struct CountReport {
  BigCount models;
  Ledger ledger;
  /// Number of nonempty monotone sub-formulae visited.
  std::uint64_t visited = 0;
  /// Largest monotone sub-formula size seen.
  std::size_t max_size = 0;
};

namespace detail {

/// Clause-index bitsets for the depth-first enumeration. compat[j] holds every
/// non-tautological clause that does not conflict with clause j, so a
/// selection stays monotone iff each new clause lies in the intersection of
/// the compat sets of the clauses already chosen.
class CompatibilityIndex {
 public:
  explicit CompatibilityIndex(const Formula& f);

  std::size_t num_clauses() const noexcept { return m_; }
  std::size_t clause_words() const noexcept { return mw_; }
  std::size_t var_words() const noexcept { return nw_; }
  bool usable(std::size_t j) const noexcept { return usable_[j]; }

  const std::uint64_t* compat(std::size_t j) const noexcept { return compat_.data() + j * mw_; }
  const std::uint64_t* vars(std::size_t j) const noexcept { return vars_.data() + j * nw_; }

 private:
  std::size_t m_ = 0;
  std::size_t mw_ = 0;
  std::size_t nw_ = 0;
  std::vector<bool> usable_;
  std::vector<std::uint64_t> compat_;
  std::vector<std::uint64_t> vars_;
};

/// Per-worker scratch: one candidate bitset and one variable bitset per depth.
class Workspace {
 public:
  explicit Workspace(const CompatibilityIndex& idx) : idx_(&idx) {}

  std::uint64_t* cand(std::size_t depth) { return level(depth).cand.data(); }
  std::uint64_t* vars(std::size_t depth) { return level(depth).vars.data(); }

 private:
  struct Level {
    std::vector<std::uint64_t> cand;
    std::vector<std::uint64_t> vars;
  };
  Level& level(std::size_t depth) {
    while (levels_.size() <= depth) {
      levels_.push_back(Level{std::vector<std::uint64_t>(idx_->clause_words(), 0),
                              std::vector<std::uint64_t>(idx_->var_words(), 0)});
    }
    return levels_[depth];
  }

  const CompatibilityIndex* idx_;
  std::vector<Level> levels_;
};

/// Depth-first extension over ascending clause indices. Every monotone subset
/// is produced exactly once, and a conflicting extension is never formed.
template <class Visit>
class Enumerator {
 public:
  Enumerator(const CompatibilityIndex& idx, Workspace& ws, Visit& visit, std::size_t cap)
      : idx_(idx), ws_(ws), visit_(visit), cap_(cap) {}

  /// Visits every monotone subset whose smallest clause index is root.
  void run_root(std::size_t root) {
    if (!idx_.usable(root) || cap_ == 0) return;
    const std::size_t mw = idx_.clause_words();
    const std::size_t nw = idx_.var_words();
    std::uint64_t* vars = ws_.vars(1);
    const std::uint64_t* cv = idx_.vars(root);
    std::uint32_t nu = 0;
    for (std::size_t k = 0; k < nw; ++k) {
      vars[k] = cv[k];
      nu += static_cast<std::uint32_t>(std::popcount(cv[k]));
    }
    visit_(std::size_t{1}, nu);
    if (cap_ == 1) return;
    const std::size_t w0 = root >> 6;
    std::uint64_t* cand = ws_.cand(1);
    const std::uint64_t* cc = idx_.compat(root);
    std::uint64_t any = 0;
    for (std::size_t w = w0; w < mw; ++w) {
      cand[w] = cc[w];
      if (w == w0) cand[w] &= above(root);
      any |= cand[w];
    }
    if (any) extend(1, w0);
  }

 private:
  static std::uint64_t above(std::size_t j) noexcept {
    const unsigned b = j & 63;
    return b == 63 ? 0 : (~std::uint64_t{0} << (b + 1));
  }

  // Children of the selection at `depth` (candidates live from start_word on).
  void extend(std::size_t depth, std::size_t start_word) {
    const std::size_t mw = idx_.clause_words();
    const std::size_t nw = idx_.var_words();
    const std::uint64_t* cand = ws_.cand(depth);
    const std::uint64_t* vars = ws_.vars(depth);
    std::uint64_t* child_vars = ws_.vars(depth + 1);
    std::uint64_t* child_cand = ws_.cand(depth + 1);
    const std::size_t child_size = depth + 1;
    for (std::size_t w = start_word; w < mw; ++w) {
      std::uint64_t word = cand[w];
      while (word) {
        const std::size_t j = (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
        word &= word - 1;
        const std::uint64_t* cv = idx_.vars(j);
        std::uint32_t nu = 0;
        for (std::size_t k = 0; k < nw; ++k) {
          child_vars[k] = vars[k] | cv[k];
          nu += static_cast<std::uint32_t>(std::popcount(child_vars[k]));
        }
        visit_(child_size, nu);
        if (child_size >= cap_) continue;
        const std::uint64_t* cc = idx_.compat(j);
        std::uint64_t any = 0;
        for (std::size_t x = w; x < mw; ++x) {
          std::uint64_t v = cand[x] & cc[x];
          if (x == w) v &= above(j);
          child_cand[x] = v;
          any |= v;
        }
        if (any) extend(child_size, w);
      }
    }
  }

  const CompatibilityIndex& idx_;
  Workspace& ws_;
  Visit& visit_;
  std::size_t cap_;
};

inline std::size_t size_cap(const std::optional<std::size_t>& max_size) {
  return max_size.value_or(std::numeric_limits<std::size_t>::max());
}

}  // namespace detail

/// Calls visit(i, nu) once for every nonempty monotone sub-formula, where i
/// is its clause count and nu the size of its variable set. Sequential.
template <class Visit>
void enumerate_monotone(const Formula& formula, Visit&& visit,
                        std::optional<std::size_t> max_size = std::nullopt) {
  const detail::CompatibilityIndex idx(formula);
  detail::Workspace ws(idx);
  detail::Enumerator<std::remove_reference_t<Visit>> e(idx, ws, visit, detail::size_cap(max_size));
  for (std::size_t root = 0; root < idx.num_clauses(); ++root) e.run_root(root);
}

/// Parallel enumeration: top-level branches (the smallest clause index of each
/// subset) are handed out to `threads` workers, each visiting into its own
/// copy of `prototype`. Returns the per-worker visitors for merging; any
/// associative, commutative merge makes the result schedule-independent.
template <class Visitor>
std::vector<Visitor> enumerate_monotone_parallel(const Formula& formula, unsigned threads,
                                                 const Visitor& prototype,
                                                 std::optional<std::size_t> max_size = std::nullopt) {
  const detail::CompatibilityIndex idx(formula);
  const std::size_t m = idx.num_clauses();
  const unsigned workers =
      static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, m)));
  std::vector<Visitor> visitors(workers, prototype);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned w) {
    try {
      detail::Workspace ws(idx);
      detail::Enumerator<Visitor> e(idx, ws, visitors[w], detail::size_cap(max_size));
      for (std::size_t root = next.fetch_add(1); root < m; root = next.fetch_add(1)) {
        e.run_root(root);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);
  return visitors;
}

/// Ledger of monotone sub-formulae (optionally only those of size <= max_size).
Ledger build_ledger(const Formula& formula, const CountOptions& options = {});

/// Sum over nu of (O_nu - E_nu) * 2^(n - nu), without range checks.
BigInt signed_sum(const Ledger& ledger);

/// |U| from an uncapped ledger. Throws InconsistencyError if the sum falls
/// outside [0, 2^n].
BigCount unsat_from_ledger(const Ledger& ledger);

/// Exact number of satisfying assignments: 2^n - |U|.
BigCount count_models(const Formula& formula, const CountOptions& options = {});

/// count_models plus ledger and enumeration statistics.
CountReport count_with_report(const Formula& formula, const CountOptions& options = {});

/// |U| accumulated without a ledger: each worker keeps only O_nu - E_nu as a
/// machine integer per nu. Must agree with unsat_from_ledger(build_ledger(f)).
BigCount unsat_fused(const Formula& formula, unsigned threads = 1);

/// Bonferroni partial sum truncated at sub-formula size r (r >= 1). Odd r
/// bounds |U| from above, even r from below.
SignedPartial truncated_unsat(const Formula& formula, std::size_t r, unsigned threads = 1);

/// Size of the largest monotone sub-formula (0 if there is none).
std::size_t max_monotone_size(const Formula& formula, unsigned threads = 1);

}  // namespace monocount
