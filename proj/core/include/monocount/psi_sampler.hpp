#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace monocount {

struct PsiOptions {
  /// Record (i, crystal size) after every enrollment.
  bool record_trajectory = false;
  /// Generate the whole formula first and scan a uniform random permutation
  /// of it, instead of streaming i.i.d. clauses.
  bool materialize = false;
  /// With materialize: generate the formula without duplicate clauses.
  bool distinct = false;
};

/// One greedy build of a maximal monotone sub-formula Psi: each of the
/// ceil(delta n) clauses is offered once and enrolled iff it is compatible
/// with the signs crystalised so far.
struct PsiRun {
  std::size_t i_final = 0;
  /// Clauses examined (always ceil(delta n): the stream is exhausted).
  std::size_t consumed = 0;
  /// 1-based stream position of the last enrolled clause.
  std::size_t last_enrolled_at = 0;
  std::size_t crystal_size = 0;
  std::vector<std::pair<std::size_t, std::size_t>> trajectory;
  std::uint64_t seed = 0;
};

struct PsiSummary {
  std::uint32_t n = 0;
  double delta = 0.0;
  double lambda = 0.0;
  std::size_t trials = 0;
  double mean = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
  /// Sample standard deviation (n - 1 denominator); 0 for a single trial.
  double stddev = 0.0;
  std::uint64_t master_seed = 0;
  std::vector<PsiRun> runs;
};

PsiRun sample_psi(std::uint32_t n, double delta, double lambda, std::uint64_t seed,
                  const PsiOptions& options = {});

/// Runs trial t with seed derive_seed(master_seed, t), spread over `threads`
/// workers; the summary does not depend on the worker count.
PsiSummary sample_summary(std::uint32_t n, double delta, double lambda, std::size_t trials,
                          std::uint64_t master_seed, unsigned threads = 1,
                          const PsiOptions& options = {});

}  // namespace monocount
