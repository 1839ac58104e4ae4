#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "monocount/dimacs.hpp"
#include "monocount/instance_gen.hpp"

using namespace monocount;

namespace {

Clause C(std::initializer_list<int> lits) { return Clause::from_literals(lits); }

ParseErrorKind kind_of(std::string_view text) {
  try {
    parse_dimacs(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseErrorKind::BadToken;
}

std::size_t line_of(std::string_view text) {
  try {
    parse_dimacs(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(MONOCOUNT_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(ParseDimacs, DirectEncodings) {
  const Formula a = parse_dimacs("p cnf 2 1\n1 -2 0");
  EXPECT_EQ(a, Formula(2, {C({1, -2})}));

  const Formula b = parse_dimacs("p cnf 1 2\n1 0\n-1 0");
  EXPECT_EQ(b, Formula(1, {C({1}), C({-1})}));

  const Formula t = parse_dimacs("p cnf 2 1\n1 -1 0");
  ASSERT_EQ(t.num_clauses(), 1U);
  EXPECT_TRUE(t[0].tautological());
}

TEST(ParseDimacs, CommentsWhitespaceAndMultiLineClauses) {
  const Formula f = parse_dimacs("c hello\n\n  p cnf 3 2 \r\n1\t2 0\r\nc mid\n  -3   0\n");
  EXPECT_EQ(f, Formula(3, {C({1, 2}), C({-3})}));
}

TEST(ParseDimacs, ClausesMaySpanLines) {
  const Formula f = parse_dimacs("c x\np cnf 3 2\n1 2\n -3 0 2\n3 0\n");
  EXPECT_EQ(f, Formula(3, {C({1, 2, -3}), C({2, 3})}));
}

TEST(ParseDimacs, DeduplicatesLiterals) {
  const Formula f = parse_dimacs("p cnf 2 1\n1 1 -2 1 0\n");
  EXPECT_EQ(f[0], C({1, -2}));
  EXPECT_EQ(f[0].size(), 2U);
}

TEST(ParseDimacs, PercentEndsInput) {
  const Formula f = parse_dimacs("p cnf 2 1\n1 2 0\n%\n0\n");
  EXPECT_EQ(f.num_clauses(), 1U);
}

TEST(ParseDimacs, DistinctErrors) {
  EXPECT_EQ(kind_of("1 2 0\n"), ParseErrorKind::MissingHeader);
  EXPECT_EQ(kind_of(""), ParseErrorKind::MissingHeader);
  EXPECT_EQ(kind_of("p cnf x 1\n1 0\n"), ParseErrorKind::MalformedHeader);
  EXPECT_EQ(kind_of("p dnf 2 1\n1 0\n"), ParseErrorKind::MalformedHeader);
  EXPECT_EQ(kind_of("p cnf 2 1\np cnf 2 1\n1 0\n"), ParseErrorKind::DuplicateHeader);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 a 0\n"), ParseErrorKind::BadToken);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 3 0\n"), ParseErrorKind::LiteralOutOfRange);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 -3 0\n"), ParseErrorKind::LiteralOutOfRange);
  EXPECT_EQ(kind_of("p cnf 2 2\n1 0\n0\n"), ParseErrorKind::EmptyClause);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 2\n"), ParseErrorKind::UnterminatedClause);
  EXPECT_EQ(kind_of("p cnf 2 2\n1 0\n"), ParseErrorKind::ClauseCountMismatch);
  EXPECT_EQ(kind_of("p cnf 2 1\n1 0\n2 0\n"), ParseErrorKind::ClauseCountMismatch);
}

TEST(ParseDimacs, ErrorsNameTheLine) {
  EXPECT_EQ(line_of("c\nc\np cnf 2 1\n1 7 0\n"), 4U);
  EXPECT_EQ(line_of("p cnf 2 2\n1 0\n\n0\n"), 4U);
  try {
    parse_dimacs("p cnf 2 1\n\n1 9 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(EmitDimacs, Examples) {
  EXPECT_EQ(emit_dimacs(Formula(1, {C({1})})), "p cnf 1 1\n1 0\n");
  EXPECT_EQ(emit_dimacs(Formula(3)), "p cnf 3 0\n");
  EXPECT_EQ(emit_dimacs(Formula(3, {C({3, -1}), C({2, -2})})), "p cnf 3 2\n-1 3 0\n-2 2 0\n");
}

TEST(EmitDimacs, RoundTripOfGeneratedFormulae) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenParams p;
    p.n = 8 + static_cast<std::uint32_t>(seed);
    p.delta = 1.5;
    p.lambda = 1.0;
    p.seed = seed;
    p.lambda_up = seed % 3 == 0 ? std::optional<std::uint32_t>(p.n / 2 + 2) : std::nullopt;
    p.distinct = seed % 2 == 1;
    const Formula f = random_formula(p);
    const Formula g = parse_dimacs(emit_dimacs(f));
    EXPECT_EQ(f, g) << "seed " << seed;
    ASSERT_TRUE(g.provenance().has_value());
    EXPECT_EQ(g.provenance()->seed, seed);
    EXPECT_EQ(emit_dimacs(g), emit_dimacs(f));
  }
}

TEST(Fixtures, ParseAsExpected) {
  EXPECT_EQ(parse_dimacs(slurp("empty_n3.cnf")), Formula(3));
  EXPECT_EQ(parse_dimacs(slurp("contradiction.cnf")), Formula(1, {C({1}), C({-1})}));
  const Formula td = parse_dimacs(slurp("taut_dup.cnf"));
  EXPECT_EQ(td.num_clauses(), 4U);
  EXPECT_EQ(td.num_tautological(), 1U);
  EXPECT_EQ(td[1], td[2]);
  EXPECT_EQ(kind_of(slurp("out_of_range.cnf")), ParseErrorKind::LiteralOutOfRange);
  EXPECT_EQ(kind_of(slurp("count_mismatch.cnf")), ParseErrorKind::ClauseCountMismatch);
}
