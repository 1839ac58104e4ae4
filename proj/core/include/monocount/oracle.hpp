#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "monocount/formula.hpp"
#include "monocount/ledger.hpp"

namespace monocount {

/// Brute-force ground truth for small formulas. Deliberately naive: every
/// assignment or every clause subset is inspected.
namespace oracle {

struct OracleLimits {
  std::uint32_t max_n_assignments = 26;
  std::uint32_t max_m_subsets = 22;
};

class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts assignments b with every clause satisfied, where b satisfies c iff
/// (b & pos_mask(c)) != 0 or (~b & neg_mask(c)) != 0.
BigCount brute_force_models(const Formula& formula, const OracleLimits& limits = {});

/// Counts assignments falsifying at least one clause, by a separate scan.
BigCount brute_force_unsat(const Formula& formula, const OracleLimits& limits = {});

/// Tallies every nonempty clause subset that is pairwise non-conflicting.
Ledger brute_force_ledger(const Formula& formula, const OracleLimits& limits = {});

/// True iff no variable occurs with both signs across the union of clauses.
bool is_monotone(std::span<const Clause> clauses);

}  // namespace oracle
}  // namespace monocount
