#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "monocount/instance_gen.hpp"
#include "monocount/predictor.hpp"
#include "monocount/psi_sampler.hpp"
#include "monocount/rng.hpp"

using namespace monocount;

namespace {

// Replays the clause stream of sample_psi(n, delta, lambda, seed) and keeps
// the crystal as a map variable -> sign. Returns (i, crystal size) after
// every enrollment and the number of enrollments.
std::vector<std::pair<std::size_t, std::size_t>> replay(std::uint32_t n, double delta,
                                                        double lambda, std::uint64_t seed) {
  const std::uint32_t K = clause_length(n, lambda);
  const std::size_t m = clause_count(n, delta);
  Rng rng(seed);
  ClauseSampler sampler(n);
  std::map<std::uint32_t, bool> crystal;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t t = 0; t < m; ++t) {
    const auto lits = sampler.draw(K, rng);
    bool ok = true;
    for (const Literal& l : lits) {
      auto it = crystal.find(index_of(l.var));
      if (it != crystal.end() && it->second != l.negated) ok = false;
    }
    if (!ok) continue;
    for (const Literal& l : lits) crystal[index_of(l.var)] = l.negated;
    out.emplace_back(out.size() + 1, crystal.size());
  }
  return out;
}

}  // namespace

TEST(SamplePsi, TwoUnitClauses) {
  std::size_t ones = 0, twos = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const PsiRun r = sample_psi(2, 1.0, 1.0, seed);
    ASSERT_EQ(r.consumed, 2U);
    ASSERT_TRUE(r.i_final == 1 || r.i_final == 2);
    (r.i_final == 1 ? ones : twos) += 1;
  }
  // Two unit clauses clash with probability 1/4.
  EXPECT_NEAR(ones / 400.0, 0.25, 0.07);
  EXPECT_GT(twos, ones);
}

TEST(SamplePsi, TwoUnitClausesEnrollBothUnlessTheyClash) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    ClauseSampler sampler(2);
    const Clause a = sampler.draw_clause(1, rng);
    const Clause b = sampler.draw_clause(1, rng);
    const PsiRun r = sample_psi(2, 1.0, 1.0, seed);
    EXPECT_EQ(r.i_final, conflicts(a, b) ? 1U : 2U);
  }
}

TEST(SamplePsi, Deterministic) {
  PsiOptions o;
  o.record_trajectory = true;
  const PsiRun a = sample_psi(1000, 1.5, 1.0, 77, o);
  const PsiRun b = sample_psi(1000, 1.5, 1.0, 77, o);
  EXPECT_EQ(a.i_final, b.i_final);
  EXPECT_EQ(a.trajectory, b.trajectory);
  EXPECT_EQ(a.last_enrolled_at, b.last_enrolled_at);
  EXPECT_NE(sample_psi(1000, 1.5, 1.0, 78, o).trajectory, a.trajectory);
}

TEST(SamplePsi, MatchesAnIndependentReplay) {
  PsiOptions o;
  o.record_trajectory = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (auto [n, d, l] : {std::tuple{64U, 4.0, 1.0}, {500U, 1.0, 1.0}, {300U, 3.0, 1.5}}) {
      const PsiRun r = sample_psi(n, d, l, seed, o);
      const auto want = replay(n, d, l, seed);
      ASSERT_EQ(r.trajectory, want);
      ASSERT_EQ(r.i_final, want.size());
    }
  }
}

TEST(SamplePsi, TrajectoryInvariants) {
  PsiOptions o;
  o.record_trajectory = true;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (auto [n, d, l] : {std::tuple{64U, 8.0, 1.0}, {4096U, 1.0, 1.0}, {1000U, 2.0, 2.0}}) {
      const std::uint32_t K = clause_length(n, l);
      const PsiRun r = sample_psi(n, d, l, seed, o);
      ASSERT_LE(r.i_final, r.consumed);
      ASSERT_EQ(r.consumed, clause_count(n, d));
      ASSERT_LE(r.last_enrolled_at, r.consumed);
      ASSERT_EQ(r.trajectory.size(), r.i_final);
      ASSERT_FALSE(r.trajectory.empty());
      ASSERT_EQ(r.trajectory[0].second, K);
      for (std::size_t t = 1; t < r.trajectory.size(); ++t) {
        const std::size_t gain = r.trajectory[t].second - r.trajectory[t - 1].second;
        ASSERT_LE(gain, K);
        ASSERT_GE(r.trajectory[t].second, r.trajectory[t - 1].second);
      }
      ASSERT_LE(r.trajectory.back().second, n);
      ASSERT_EQ(r.crystal_size, r.trajectory.back().second);
      ASSERT_LE(r.crystal_size, r.i_final * K);
    }
  }
}

TEST(SamplePsi, CrystalPassesHalfOfTheVariables) {
  // n = 2^14, lambda = 1: after n / log2 n = 1170 enrollments at least n / 2
  // variables are crystallised. The crystal after i enrollments does not
  // depend on delta (a longer stream only extends the same prefix), and
  // delta = 16 makes the stream long enough to reach 1170 enrollments.
  const std::uint32_t n = 1U << 14;
  PsiOptions o;
  o.record_trajectory = true;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const PsiRun r = sample_psi(n, 16.0, 1.0, derive_seed(14, t), o);
    ASSERT_GE(r.i_final, 1170U);
    ASSERT_GE(r.trajectory[1169].second, n / 2);
  }
}

TEST(SamplePsi, LongerStreamsExtendTheSameTrajectory) {
  PsiOptions o;
  o.record_trajectory = true;
  const PsiRun short_run = sample_psi(4096, 1.0, 1.0, 12, o);
  const PsiRun long_run = sample_psi(4096, 4.0, 1.0, 12, o);
  ASSERT_GE(long_run.trajectory.size(), short_run.trajectory.size());
  EXPECT_TRUE(std::equal(short_run.trajectory.begin(), short_run.trajectory.end(),
                         long_run.trajectory.begin()));
}

TEST(SamplePsi, MaterializedModeScansEveryClauseOnce) {
  PsiOptions o;
  o.materialize = true;
  o.record_trajectory = true;
  const PsiRun a = sample_psi(256, 2.0, 1.0, 5, o);
  EXPECT_EQ(a.consumed, 512U);
  EXPECT_LE(a.i_final, 512U);
  EXPECT_EQ(sample_psi(256, 2.0, 1.0, 5, o).trajectory, a.trajectory);
  o.distinct = true;
  const PsiRun b = sample_psi(256, 2.0, 1.0, 5, o);
  EXPECT_EQ(b.consumed, 512U);
}

TEST(SamplePsi, PropagatesClauseLengthErrors) {
  EXPECT_THROW(sample_psi(4, 1.0, 3.0, 1), std::domain_error);
  EXPECT_THROW(sample_psi(1, 1.0, 1.0, 1), std::domain_error);
}

TEST(SampleSummary, SingleTrial) {
  const PsiSummary s = sample_summary(1024, 1.0, 1.0, 1, 9);
  EXPECT_EQ(s.trials, 1U);
  EXPECT_EQ(static_cast<double>(s.min), s.mean);
  EXPECT_EQ(s.min, s.max);
  EXPECT_EQ(s.stddev, 0.0);
  EXPECT_EQ(s.runs[0].i_final, sample_psi(1024, 1.0, 1.0, derive_seed(9, 0)).i_final);
  EXPECT_THROW(sample_summary(1024, 1.0, 1.0, 0, 9), std::invalid_argument);
}

TEST(SampleSummary, StatisticsAndWorkerIndependence) {
  const PsiSummary a = sample_summary(2048, 1.0, 1.0, 40, 3, 1);
  const PsiSummary b = sample_summary(2048, 1.0, 1.0, 40, 3, 4);
  ASSERT_EQ(a.runs.size(), b.runs.size());
  for (std::size_t t = 0; t < a.runs.size(); ++t) {
    EXPECT_EQ(a.runs[t].i_final, b.runs[t].i_final);
    EXPECT_EQ(a.runs[t].seed, derive_seed(3, t));
  }
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.stddev, b.stddev);

  double sum = 0.0;
  for (const PsiRun& r : a.runs) sum += static_cast<double>(r.i_final);
  const double mean = sum / 40.0;
  double ss = 0.0;
  for (const PsiRun& r : a.runs) ss += (r.i_final - mean) * (r.i_final - mean);
  EXPECT_DOUBLE_EQ(a.mean, mean);
  EXPECT_NEAR(a.stddev, std::sqrt(ss / 39.0), 1e-12);
  EXPECT_LE(static_cast<double>(a.min), a.mean);
  EXPECT_GE(static_cast<double>(a.max), a.mean);
}

TEST(SampleSummary, AgreesWithThePredictor) {
  const PsiSummary s = sample_summary(1U << 12, 1.0, 1.0, 100, 2024);
  const double pred = static_cast<double>(predict_istop(1U << 12, 1.0, 1.0).i_stop);
  EXPECT_LE(std::abs(s.mean - pred) / pred, 0.05) << s.mean << " vs " << pred;
}

TEST(SampleSummary, SpreadNarrowsWithN) {
  const PsiSummary small = sample_summary(1U << 12, 1.0, 1.0, 100, 2024);
  const PsiSummary large = sample_summary(1U << 16, 1.0, 1.0, 100, 2024);
  const double rs = static_cast<double>(small.max - small.min) / small.mean;
  const double rl = static_cast<double>(large.max - large.min) / large.mean;
  EXPECT_LT(rl, rs);
}
