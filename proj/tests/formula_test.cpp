#include <gtest/gtest.h>

#include <vector>

#include "monocount/formula.hpp"
#include "monocount/instance_gen.hpp"
#include "monocount/rng.hpp"

using namespace monocount;

namespace {

Clause C(std::initializer_list<int> lits) { return Clause::from_literals(lits); }

std::vector<VarId> vars(std::initializer_list<std::uint32_t> xs) {
  std::vector<VarId> out;
  for (auto x : xs) out.push_back(var(x));
  return out;
}

}  // namespace

TEST(Clause, SortsAndDeduplicatesLiterals) {
  const Clause c = C({3, -2, 3, 1, -2});
  EXPECT_EQ(c.pos(), vars({1, 3}));
  EXPECT_EQ(c.neg(), vars({2}));
  EXPECT_EQ(c.size(), 3U);
  EXPECT_FALSE(c.tautological());
  EXPECT_EQ(c.max_var(), 3U);
  EXPECT_EQ(c.literals(), (std::vector<int>{1, -2, 3}));
}

TEST(Clause, FlagsTautology) {
  const Clause t = C({1, -1});
  EXPECT_TRUE(t.tautological());
  EXPECT_EQ(t.literals(), (std::vector<int>{-1, 1}));
}

TEST(Clause, RejectsLiteralZero) { EXPECT_THROW(C({1, 0}), std::invalid_argument); }

TEST(Formula, RejectsEmptyClauseAndOutOfRangeVariables) {
  EXPECT_THROW(Formula(2, {Clause()}), std::invalid_argument);
  EXPECT_THROW(Formula(2, {C({3})}), std::invalid_argument);
  EXPECT_NO_THROW(Formula(3, {C({3}), C({3})}));
}

TEST(Formula, KeepsDuplicatesAsDistinctClauses) {
  const Formula f(2, {C({1, 2}), C({1, 2}), C({2, -2})});
  EXPECT_EQ(f.num_clauses(), 3U);
  EXPECT_EQ(f.num_tautological(), 1U);
}

TEST(Conflicts, Examples) {
  EXPECT_TRUE(conflicts(C({1, 2}), C({3, -1})));
  EXPECT_FALSE(conflicts(C({1, 2}), C({2, 3})));
  const Clause c = C({1, -2, 5});
  EXPECT_FALSE(conflicts(c, c));
  const Clause t = C({4, -4});
  EXPECT_TRUE(conflicts(t, t));
}

TEST(Compatible, Examples) {
  SignedVarSet empty(5);
  EXPECT_TRUE(compatible(empty, C({1, -2, 3})));
  EXPECT_FALSE(compatible(empty, C({1, -1})));

  SignedVarSet s2(5);
  s2.merge(C({2}));
  EXPECT_FALSE(compatible(s2, C({1, -2})));

  SignedVarSet s13(5);
  s13.merge(C({1, -3}));
  EXPECT_TRUE(compatible(s13, C({1, 4})));
}

TEST(SignedVarSet, MergeCountsNewVariablesAndRejectsClashes) {
  SignedVarSet s(70);
  EXPECT_EQ(s.merge(C({1, -64, 70})), 3U);
  EXPECT_EQ(s.merge(C({1, 2})), 1U);
  EXPECT_EQ(s.size(), 4U);
  EXPECT_TRUE(s.has_pos(var(70)));
  EXPECT_TRUE(s.has_neg(var(64)));
  EXPECT_FALSE(s.contains(var(63)));
  EXPECT_THROW(s.merge(C({64})), std::logic_error);
  EXPECT_EQ(s.size(), 4U);
  s.clear();
  EXPECT_TRUE(s.empty());
}

TEST(SignedVarSet, LiteralSpanAgreesWithClause) {
  Rng rng(11);
  ClauseSampler sampler(20);
  for (int round = 0; round < 200; ++round) {
    SignedVarSet a(20), b(20);
    for (int step = 0; step < 8; ++step) {
      auto lits = sampler.draw(3, rng);
      std::vector<int> ints;
      for (const Literal& l : lits) {
        const int v = static_cast<int>(index_of(l.var));
        ints.push_back(l.negated ? -v : v);
      }
      const Clause c = Clause::from_literals(ints);
      ASSERT_EQ(a.compatible(lits), b.compatible(c));
      if (b.compatible(c)) {
        ASSERT_EQ(a.merge(lits), b.merge(c));
      }
      ASSERT_EQ(a, b);
    }
  }
}

// Property: conflicts is symmetric, and compatibility with a crystal equals
// "no conflict with any clause merged so far".
TEST(Property, ConflictSymmetryAndCompatibilityReplay) {
  Rng rng(2024);
  for (int round = 0; round < 500; ++round) {
    const auto n = static_cast<std::uint32_t>(1 + rng.below(12));
    std::vector<Clause> merged;
    SignedVarSet crystal(n);
    for (int step = 0; step < 10; ++step) {
      const auto k = static_cast<std::uint32_t>(1 + rng.below(std::min<std::uint32_t>(n, 4)));
      const Clause c = random_clause(n, k, rng);
      for (const Clause& d : merged) ASSERT_EQ(conflicts(c, d), conflicts(d, c));
      bool clash = false;
      for (const Clause& d : merged) clash = clash || conflicts(c, d);
      ASSERT_EQ(crystal.compatible(c), !clash);
      if (!clash) {
        const std::size_t before = crystal.size();
        crystal.merge(c);
        merged.push_back(c);
        ASSERT_GE(crystal.size(), before);
        for (std::uint32_t v = 1; v <= n; ++v) {
          ASSERT_FALSE(crystal.has_pos(var(v)) && crystal.has_neg(var(v)));
        }
      }
    }
  }
}
