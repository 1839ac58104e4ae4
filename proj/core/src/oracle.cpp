#include "monocount/oracle.hpp"

#include <bit>
#include <set>
#include <vector>

#include <fmt/format.h>

namespace monocount::oracle {

namespace {

constexpr std::uint32_t kHardAssignmentLimit = 40;
constexpr std::uint32_t kHardSubsetLimit = 40;

struct Masks {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

std::vector<Masks> assignment_masks(const Formula& f, const OracleLimits& limits) {
  const std::uint32_t n = f.num_vars();
  if (n > limits.max_n_assignments || n > kHardAssignmentLimit) {
    throw LimitExceeded(fmt::format("assignment scan over n = {} variables exceeds limit {}", n,
                                    std::min(limits.max_n_assignments, kHardAssignmentLimit)));
  }
  std::vector<Masks> out;
  out.reserve(f.num_clauses());
  for (const Clause& c : f.clauses()) {
    Masks mk;
    for (VarId v : c.pos()) mk.pos |= std::uint64_t{1} << (index_of(v) - 1);
    for (VarId v : c.neg()) mk.neg |= std::uint64_t{1} << (index_of(v) - 1);
    out.push_back(mk);
  }
  return out;
}

bool satisfies(std::uint64_t b, const Masks& mk) { return (b & mk.pos) != 0 || (~b & mk.neg) != 0; }

}  // namespace

BigCount brute_force_models(const Formula& formula, const OracleLimits& limits) {
  const auto masks = assignment_masks(formula, limits);
  const std::uint64_t total = std::uint64_t{1} << formula.num_vars();
  std::uint64_t sat = 0;
  for (std::uint64_t b = 0; b < total; ++b) {
    bool ok = true;
    for (const Masks& mk : masks) {
      if (!satisfies(b, mk)) {
        ok = false;
        break;
      }
    }
    sat += ok;
  }
  return BigCount(sat);
}

BigCount brute_force_unsat(const Formula& formula, const OracleLimits& limits) {
  const auto masks = assignment_masks(formula, limits);
  const std::uint64_t total = std::uint64_t{1} << formula.num_vars();
  std::uint64_t unsat = 0;
  for (std::uint64_t b = 0; b < total; ++b) {
    for (const Masks& mk : masks) {
      // b falsifies c iff every literal of c is false under b.
      if ((b & mk.pos) == 0 && (b & mk.neg) == mk.neg) {
        ++unsat;
        break;
      }
    }
  }
  return BigCount(unsat);
}

Ledger brute_force_ledger(const Formula& formula, const OracleLimits& limits) {
  const auto m = static_cast<std::uint32_t>(formula.num_clauses());
  if (m > limits.max_m_subsets || m > kHardSubsetLimit) {
    throw LimitExceeded(fmt::format("subset scan over m = {} clauses exceeds limit {}", m,
                                    std::min(limits.max_m_subsets, kHardSubsetLimit)));
  }
  const std::uint32_t n = formula.num_vars();
  const auto& cs = formula.clauses();

  // clash[j]: clauses conflicting with j (j itself when j is tautological).
  std::vector<std::uint64_t> clash(m, 0);
  for (std::uint32_t a = 0; a < m; ++a) {
    for (std::uint32_t b = 0; b < m; ++b) {
      if (conflicts(cs[a], cs[b])) clash[a] |= std::uint64_t{1} << b;
    }
  }
  const std::size_t nw = (static_cast<std::size_t>(n) + 64) / 64;
  std::vector<std::vector<std::uint64_t>> vars(m, std::vector<std::uint64_t>(nw, 0));
  for (std::uint32_t j = 0; j < m; ++j) {
    for (VarId v : cs[j].pos()) vars[j][index_of(v) >> 6] |= std::uint64_t{1} << (index_of(v) & 63);
    for (VarId v : cs[j].neg()) vars[j][index_of(v) >> 6] |= std::uint64_t{1} << (index_of(v) & 63);
  }

  std::vector<std::uint64_t> odd(n + 1, 0);
  std::vector<std::uint64_t> even(n + 1, 0);
  std::vector<std::uint64_t> uni(nw);
  const std::uint64_t subsets = std::uint64_t{1} << m;
  for (std::uint64_t s = 1; s < subsets; ++s) {
    bool monotone = true;
    for (std::uint64_t rest = s; rest && monotone; rest &= rest - 1) {
      monotone = (clash[std::countr_zero(rest)] & s) == 0;
    }
    if (!monotone) continue;
    std::fill(uni.begin(), uni.end(), 0);
    for (std::uint64_t rest = s; rest; rest &= rest - 1) {
      const auto& v = vars[std::countr_zero(rest)];
      for (std::size_t k = 0; k < nw; ++k) uni[k] |= v[k];
    }
    std::uint32_t nu = 0;
    for (std::uint64_t w : uni) nu += static_cast<std::uint32_t>(std::popcount(w));
    ++((std::popcount(s) & 1) ? odd : even)[nu];
  }

  Ledger ledger(n);
  for (std::uint32_t nu = 1; nu <= n; ++nu) {
    ledger.add(nu, true, odd[nu]);
    ledger.add(nu, false, even[nu]);
  }
  return ledger;
}

bool is_monotone(std::span<const Clause> clauses) {
  std::set<VarId> pos;
  std::set<VarId> neg;
  for (const Clause& c : clauses) {
    pos.insert(c.pos().begin(), c.pos().end());
    neg.insert(c.neg().begin(), c.neg().end());
  }
  for (VarId v : pos) {
    if (neg.count(v)) return false;
  }
  return true;
}

}  // namespace monocount::oracle
