#include "monocount/psi_sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "monocount/formula.hpp"
#include "monocount/instance_gen.hpp"
#include "monocount/rng.hpp"

namespace monocount {

namespace {

struct Builder {
  SignedVarSet crystal;
  PsiRun run;
  bool record;

  Builder(std::uint32_t n, std::uint64_t seed, bool record_trajectory)
      : crystal(n), record(record_trajectory) {
    run.seed = seed;
  }

  template <class Lits>
  void offer(const Lits& lits) {
    ++run.consumed;
    if (!crystal.compatible(lits)) return;
    crystal.merge(lits);
    ++run.i_final;
    run.last_enrolled_at = run.consumed;
    if (record) run.trajectory.emplace_back(run.i_final, crystal.size());
  }

  PsiRun finish() {
    run.crystal_size = crystal.size();
    return std::move(run);
  }
};

}  // namespace

PsiRun sample_psi(std::uint32_t n, double delta, double lambda, std::uint64_t seed,
                  const PsiOptions& options) {
  const std::uint32_t K = clause_length(n, lambda);
  const std::size_t m = clause_count(n, delta);
  Builder b(n, seed, options.record_trajectory);

  if (!options.materialize) {
    Rng rng(seed);
    ClauseSampler sampler(n);
    for (std::size_t t = 0; t < m; ++t) b.offer(sampler.draw(K, rng));
    return b.finish();
  }

  GenParams params;
  params.n = n;
  params.delta = delta;
  params.lambda = lambda;
  params.seed = seed;
  params.distinct = options.distinct;
  const Formula phi = random_formula(params);
  std::vector<std::size_t> order(phi.num_clauses());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(splitmix64(seed));
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
  for (std::size_t idx : order) b.offer(phi[idx]);
  return b.finish();
}

PsiSummary sample_summary(std::uint32_t n, double delta, double lambda, std::size_t trials,
                          std::uint64_t master_seed, unsigned threads,
                          const PsiOptions& options) {
  if (trials < 1) throw std::invalid_argument("sample_summary: trials must be at least 1");
  (void)clause_length(n, lambda);

  PsiSummary s;
  s.n = n;
  s.delta = delta;
  s.lambda = lambda;
  s.trials = trials;
  s.master_seed = master_seed;
  s.runs.resize(trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
        s.runs[t] = sample_psi(n, delta, lambda, derive_seed(master_seed, t), options);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, trials));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0.0;
  s.min = s.runs.front().i_final;
  s.max = s.runs.front().i_final;
  for (const PsiRun& r : s.runs) {
    sum += static_cast<double>(r.i_final);
    s.min = std::min(s.min, r.i_final);
    s.max = std::max(s.max, r.i_final);
  }
  s.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (const PsiRun& r : s.runs) {
      const double d = static_cast<double>(r.i_final) - s.mean;
      ss += d * d;
    }
    s.stddev = std::sqrt(ss / static_cast<double>(trials - 1));
  }
  return s;
}

}  // namespace monocount
