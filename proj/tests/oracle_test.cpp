#include <gtest/gtest.h>

#include <vector>

#include "monocount/harness.hpp"
#include "monocount/oracle.hpp"

using namespace monocount;
using namespace monocount::oracle;

namespace {

Clause C(std::initializer_list<int> lits) { return Clause::from_literals(lits); }

}  // namespace

TEST(BruteForceModels, Examples) {
  EXPECT_EQ(brute_force_models(Formula(2)), 4);
  EXPECT_EQ(brute_force_models(Formula(1, {C({1}), C({-1})})), 0);
  EXPECT_EQ(brute_force_models(Formula(3, {C({1, 2}), C({2, 3})})), 5);
  EXPECT_EQ(brute_force_models(Formula(2, {C({1, -1})})), 4);
}

TEST(BruteForceLedger, Examples) {
  const Ledger a = brute_force_ledger(Formula(1, {C({1}), C({-1})}));
  EXPECT_EQ(a.at(1).odd, 2);
  EXPECT_EQ(a.at(1).even, 0);
  EXPECT_EQ(a.entries().size(), 1U);

  const Ledger b = brute_force_ledger(Formula(6, {C({1, -4, 6})}));
  EXPECT_EQ(b.entries().size(), 1U);
  EXPECT_EQ(b.at(3).odd, 1);

  EXPECT_TRUE(brute_force_ledger(Formula(4)).empty());
  EXPECT_TRUE(brute_force_ledger(Formula(2, {C({2, -2})})).empty());
}

TEST(IsMonotone, Examples) {
  const std::vector<Clause> yes{C({1, 2}), C({2, -3})};
  const std::vector<Clause> no{C({1}), C({-1})};
  const std::vector<Clause> taut{C({1, -1})};
  EXPECT_TRUE(is_monotone(yes));
  EXPECT_FALSE(is_monotone(no));
  EXPECT_FALSE(is_monotone(taut));
  EXPECT_TRUE(is_monotone({}));
}

TEST(Limits, AreEnforced) {
  EXPECT_THROW(brute_force_models(Formula(27)), LimitExceeded);
  EXPECT_THROW(brute_force_models(Formula(10), OracleLimits{8, 22}), LimitExceeded);
  std::vector<Clause> cs(23, C({1}));
  EXPECT_THROW(brute_force_ledger(Formula(1, cs)), LimitExceeded);
  EXPECT_NO_THROW(brute_force_ledger(Formula(1, cs), OracleLimits{26, 23}));
}

// Property: |S| + |U| = 2^n with both counted by separate scans, and
// monotonicity equals pairwise non-conflict.
TEST(Property, ScansAgreeAndMonotoneIsPairwise) {
  for (std::size_t i = 0; i < 200; ++i) {
    const Formula f = harness::selfcheck_formula(31, i);
    ASSERT_EQ(brute_force_models(f) + brute_force_unsat(f), pow2(f.num_vars()));

    const auto& cs = f.clauses();
    for (std::size_t a = 0; a < cs.size(); ++a) {
      for (std::size_t b = a; b < cs.size(); ++b) {
        const std::vector<Clause> pair =
            a == b ? std::vector<Clause>{cs[a]} : std::vector<Clause>{cs[a], cs[b]};
        // A tautological clause conflicts with itself.
        const bool clash =
            conflicts(cs[a], cs[b]) || conflicts(cs[a], cs[a]) || conflicts(cs[b], cs[b]);
        ASSERT_EQ(is_monotone(pair), !clash);
      }
    }
    bool pairwise = true;
    for (std::size_t a = 0; a < cs.size(); ++a) {
      for (std::size_t b = a; b < cs.size(); ++b) pairwise = pairwise && !conflicts(cs[a], cs[b]);
    }
    ASSERT_EQ(is_monotone(cs), pairwise);
  }
}
