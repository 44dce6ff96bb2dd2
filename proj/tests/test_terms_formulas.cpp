#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace hcont;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }

Formula random_qf(std::mt19937_64& rng, int depth) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  int r = pick(depth <= 0 ? 4 : 7);
  const char* consts[] = {"a", "b", "c"};
  switch (r) {
    case 0: return Formula::bottom();
    case 1: return Formula::top();
    case 2:
    case 3: return Formula::literal(pick(2) ? "P" : "Q", {Term(consts[pick(3)])}, pick(2) == 0);
    case 4:
    case 5: return Formula::conj(random_qf(rng, depth - 1), random_qf(rng, depth - 1));
    default: return Formula::disj(random_qf(rng, depth - 1), random_qf(rng, depth - 1));
  }
}

}  // namespace

TEST(Dual, FlipsLiteral) { EXPECT_EQ(dual(F("P(c)")), F("~P(c)")); }

TEST(Dual, DeMorganThroughQuantifiers) {
  EXPECT_EQ(dual(F("(ex x (or ~P(x) (all y P(y))))")), F("(all x (and P(x) (ex y ~P(y))))"));
}

TEST(Dual, TopBecomesBottom) { EXPECT_EQ(dual(Formula::top()), Formula::bottom()); }

TEST(Dual, IsAnInvolution) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Formula f = random_qf(rng, 3);
    EXPECT_EQ(dual(dual(f)), f);
  }
}

TEST(Subterm, SecondArgumentThenFirst) { EXPECT_EQ(subterm_at(T("f(0,s(0))"), {2, 1}), T("0")); }

TEST(Subterm, EmptyPositionIsRoot) { EXPECT_EQ(subterm_at(T("f(0,s(0))"), {}), T("f(0,s(0))")); }

TEST(Subterm, LeafHasNoChildren) {
  try {
    subterm_at(T("0"), {1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PositionOutOfRange);
  }
}

TEST(Substitution, ReplacesFreeName) { EXPECT_EQ(apply_subst(F("P(α)"), {{"α", T("t")}}), F("P(t)")); }

TEST(Substitution, GoesUnderBinder) {
  EXPECT_EQ(apply_subst(F("(ex x P(x,α))"), {{"α", T("g(β)")}}), F("(ex x P(x,g(β)))"));
}

TEST(Substitution, BoundVariableInDomainIsRejected) {
  try {
    apply_subst(F("(ex x P(x))"), {{"x", T("c")}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CaptureDetected);
  }
}

TEST(Substitution, CaptureIsRejected) {
  EXPECT_THROW(apply_subst(F("(ex x P(x,α))"), {{"α", T("x")}}), Error);
}

TEST(Leq, BottomBelowAnything) { EXPECT_TRUE(leq_formula(Formula::bottom(), F("(and P(c) Q(c))"))); }

TEST(Leq, Congruence) { EXPECT_TRUE(leq_formula(F("(and P(c) bot)"), F("(and P(c) Q(c))"))); }

TEST(Leq, ConnectiveMismatch) { EXPECT_FALSE(leq_formula(F("(or P(c) Q(c))"), F("(and P(c) Q(c))"))); }

TEST(Leq, SetExamples) {
  EXPECT_TRUE(leq_formula_set({Formula::bottom()}, {F("P(c)")}));
  EXPECT_TRUE(leq_formula_set({F("(and P(c) bot)"), F("Q(d)")}, {F("(and P(c) R(c))"), F("Q(d)")}));
  EXPECT_FALSE(leq_formula_set({F("P(c)")}, {Formula::bottom()}));
}

TEST(Leq, ReflexiveAndTransitive) {
  std::mt19937_64 rng(11);
  std::vector<Formula> fs;
  for (int i = 0; i < 60; ++i) fs.push_back(random_qf(rng, 2));
  for (const auto& a : fs) {
    EXPECT_TRUE(leq_formula(a, a));
    for (const auto& b : fs)
      for (const auto& c : fs)
        if (leq_formula(a, b) && leq_formula(b, c)) EXPECT_TRUE(leq_formula(a, c));
  }
}

TEST(Leq, RejectsQuantifiedFormulas) { EXPECT_THROW(leq_formula(F("(ex x P(x))"), F("P(c)")), Error); }

TEST(Tautology, Examples) {
  EXPECT_TRUE(is_tautology(FormulaSet{F("(or ~P(c) P(α))"), F("(or ~P(α) P(β))")}));
  EXPECT_TRUE(is_tautology(FormulaSet{F("P(c)"), F("~P(c)")}));
  EXPECT_FALSE(is_tautology(FormulaSet{F("P(c)")}));
  EXPECT_FALSE(is_tautology(FormulaSet{}));
  EXPECT_TRUE(is_tautology(FormulaSet{Formula::top()}));
}

TEST(Tautology, AgreesWithTruthTable) {
  std::mt19937_64 rng(3);
  int taut = 0;
  for (int i = 0; i < 500; ++i) {
    FormulaSet fs;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) fs.insert(random_qf(rng, 2));
    bool expected = oracle::truth_table_tautology(fs);
    taut += expected;
    EXPECT_EQ(is_tautology(fs), expected) << to_string(fs);
  }
  EXPECT_GT(taut, 20);
}

TEST(Syntax, PrintParseRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Formula f = random_qf(rng, 3);
    EXPECT_EQ(parse_formula(to_string(f)), f);
  }
  Formula q = F("(ex x (all y (or ~P(x,y) (and Q(f(x)) top))))");
  EXPECT_EQ(parse_formula(to_string(q)), q);
}

TEST(Syntax, ParseErrors) {
  EXPECT_THROW(parse_formula("(and P(c))"), Error);
  EXPECT_THROW(parse_term("f(a,"), Error);
}

TEST(ReplaceTerm, AbstractsEveryOccurrence) {
  EXPECT_EQ(replace_term(F("(or P(f(c)) Q(c))"), T("c"), T("x")), F("(or P(f(x)) Q(x))"));
}
