#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hcont;
using oracle::corpus_proof;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Term T(const char* s) { return parse_term(s); }

FormulaSet FS(std::initializer_list<const char*> xs) {
  FormulaSet out;
  for (auto x : xs) out.insert(F(x));
  return out;
}

const char* kForallId = "(all (or (ax P(α)) 1 0) 0 α (all x (or ~P(x) P(x))))";

const char* kForallIdZ = "(all (or (ax P(α)) 1 0) 0 α (all z (or ~P(z) P(z))))";

}  // namespace

TEST(WellFormed, AxiomIsFine) { EXPECT_FALSE(check_wellformed(parse_proof("(ax P(c))"))); }

TEST(WellFormed, CorpusIsWellFormed) {
  for (const auto& n : oracle::corpus_names()) EXPECT_FALSE(check_wellformed(corpus_proof(n))) << n;
}

TEST(WellFormed, EigenvariableInContext) {
  // α stays in the context of its own inference.
  try {
    parse_proof("(all (ax P(α)) 1 α (all x P(x)))");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
    EXPECT_NE(std::string(e.what()).find("root"), std::string::npos);
  }
}

TEST(WellFormed, EigenvariableEscapingBelow) {
  // α is introduced once but also appears in a sibling branch.
  Proof p = parse_proof(std::string("(and ") + kForallId + " (ax P(α)) 0 0)");
  auto d = check_wellformed(p);
  ASSERT_TRUE(d);
  EXPECT_NE(d->reason.find("eigenvariable-violation"), std::string::npos);
}

TEST(WellFormed, WitnessCapturedByBinder) {
  try {
    parse_proof("(ex (ex (ax Q(a,a)) 0 a (ex y Q(y,y))) 1 y (ex x (ex y Q(x,y))))");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("bound-capture"), std::string::npos) << e.what();
  }
}

TEST(WellFormed, NonLiteralAxiom) { EXPECT_THROW(parse_proof("(ax (and P(c) Q(c)))"), Error); }

TEST(WellFormed, ErrorNamesNodeLocator) {
  try {
    parse_proof("(cont (or (ax P(c)) 0 1) 0 5)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("root"), std::string::npos) << e.what();
  }
  try {
    parse_proof("(cont (or (ax P(c)) 0 7) 0 0)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("node 0"), std::string::npos) << e.what();
  }
}

TEST(Regular, DistinctEigenvariables) {
  EXPECT_TRUE(is_regular(corpus_proof("drinker")));
  EXPECT_TRUE(is_regular(parse_proof("(ax P(c))")));
}

TEST(Regular, RepeatedEigenvariable) {
  Proof p = parse_proof(std::string("(and ") + kForallId + " " + kForallIdZ + " 0 0)");
  EXPECT_FALSE(check_wellformed(p));
  EXPECT_FALSE(is_regular(p));
  EXPECT_FALSE(is_simple(p));
}

TEST(Eigenvariables, CutFreeDrinker) {
  auto e = eigenvariables(corpus_proof("drinker"));
  EXPECT_EQ(e.ev, (std::set<std::string>{"α", "β"}));
  EXPECT_TRUE(e.evc.empty());
}

TEST(Eigenvariables, QuantifiedCut) {
  auto e = eigenvariables(corpus_proof("drinker-with-cut"));
  EXPECT_EQ(e.ev, (std::set<std::string>{"β", "γ"}));
  EXPECT_EQ(e.evc, (std::set<std::string>{"γ"}));
}

TEST(Eigenvariables, WeakSequentsHaveOnlyCutEigenvariables) {
  for (const auto& entry : load_corpus(HCONT_CORPUS_DIR)) {
    Proof p = load_proof(entry.proof);
    auto e = eigenvariables(p);
    EXPECT_TRUE(std::includes(e.ev.begin(), e.ev.end(), e.evc.begin(), e.evc.end())) << entry.name;
    if (is_weak(p->conclusion)) EXPECT_EQ(e.ev, e.evc) << entry.name;
  }
}

TEST(Weak, Examples) {
  EXPECT_TRUE(is_weak({F("(ex x P(x))")}));
  EXPECT_FALSE(is_weak({F("(ex x (all y P(x,y)))")}));
  EXPECT_TRUE(is_weak({}));
}

TEST(Simple, QuantifierFreeCut) { EXPECT_TRUE(is_simple(corpus_proof("qf-cut"))); }

TEST(Simple, CorpusIsSimple) {
  for (const auto& n : oracle::corpus_names()) EXPECT_TRUE(is_simple(corpus_proof(n))) << n;
}

TEST(Simple, QuantifierAlternationInCut) {
  // cut on (ex x (all y P(x,y))) against its dual
  Proof l = parse_proof(
      "(ex (all (weak (ax R(c)) P(a,β)) 2 β (all y P(a,y))) 2 a (ex x (all y P(x,y))))");
  Proof r = parse_proof(
      "(all (ex (weak (ax R(c)) ~P(α,a)) 2 a (ex y ~P(α,y))) 2 α (all x (ex y ~P(x,y))))");
  Proof p = make_cut(l, r, 2, 2);
  EXPECT_FALSE(check_wellformed(p));
  auto d = simple_diagnostic(p);
  ASSERT_TRUE(d);
  EXPECT_TRUE(d->locator.empty());
  EXPECT_NE(d->reason.find("neither"), std::string::npos);
}

TEST(Simple, UniversalNotDirectlyAbove) {
  Proof p = parse_proof(
      "(cut (weak (all (or (ax P(α)) 1 0) 0 α (all x (or ~P(x) P(x)))) Q(c))"
      " (or (ex (and (ax P(c)) (ax P(c)) 0 1) 2 c (ex x (and P(x) ~P(x)))) 0 1) 0 0)");
  EXPECT_FALSE(check_wellformed(p));
  auto d = simple_diagnostic(p);
  ASSERT_TRUE(d);
  EXPECT_NE(d->reason.find("directly above"), std::string::npos);
}

TEST(Simple, ImpliesRegular) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.weak = seed % 2 == 0;
    Proof p = generate_proof(c);
    EXPECT_TRUE(is_simple(p));
    EXPECT_TRUE(is_regular(p));
  }
}

TEST(HerbrandSet, Axiom) { EXPECT_EQ(herbrand_set(parse_proof("(ax P(c))")), FS({"P(c)", "~P(c)"})); }

TEST(HerbrandSet, CutFreeDrinker) {
  // Both unused halves of the instances come from weakenings.
  EXPECT_EQ(herbrand_set(corpus_proof("drinker")), FS({"(or bot P(α))", "(or ~P(α) bot)"}));
}

TEST(HerbrandSet, WeakeningContributesBottom) {
  EXPECT_EQ(herbrand_set(parse_proof("(weak (ax P(c)) Q(d))")), FS({"P(c)", "~P(c)", "bot"}));
}

TEST(HerbrandSet, ContractionUnites) {
  Proof p = parse_proof("(cont (weak (ax P(c)) P(c)) 0 2)");
  EXPECT_EQ(herbrand_set(p), FS({"~P(c)", "P(c)", "bot"}));
  auto ms = herbrand_multiset(p);
  EXPECT_EQ(ms.size(), 3U);
}

TEST(HerbrandSet, CutFreeWeakSequentGivesTautology) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.max_cuts = 0;
    c.max_quantified_cuts = 0;
    Proof p = generate_proof(c);
    FormulaSet h = herbrand_set(p);
    for (const auto& f : h) EXPECT_TRUE(quantifier_free(f));
    EXPECT_TRUE(is_tautology(h)) << print_proof(p);
    EXPECT_TRUE(oracle::truth_table_tautology(h));
  }
}

TEST(TermsOf, ExistentialWitness) {
  Proof p = parse_proof("(ex (ax P(g(c))) 0 g(c) (ex x P(x)))");
  EXPECT_EQ(terms_of(p, {{}, 1}), (std::set<Term>{T("g(c)")}));
}

TEST(TermsOf, WeakeningGivesNothing) {
  Proof p = parse_proof("(weak (ax P(c)) (ex x Q(x)))");
  EXPECT_TRUE(terms_of(p, {{}, 2}).empty());
}

TEST(TermsOf, ContractionUnites) {
  Proof p = corpus_proof("qcut-two-witnesses");
  const auto& c = p->premises[0]->conclusion;
  int i = static_cast<int>(std::find(c.begin(), c.end(), F("(ex x P(x))")) - c.begin());
  EXPECT_EQ(node_at(p, {0})->rule, Rule::Cont);
  EXPECT_EQ(terms_of(p, {{0}, i}), (std::set<Term>{T("a"), T("f(a)")}));
}

TEST(TermsOf, RejectsNonExistential) {
  try {
    terms_of(parse_proof("(ax P(c))"), {{}, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotExistential);
  }
}

TEST(BSubstitutions, TwoWitnesses) {
  auto b = b_substitutions(corpus_proof("qcut-two-witnesses"));
  EXPECT_EQ(b, (std::set<std::pair<std::string, Term>>{{"α", T("a")}, {"α", T("f(a)")}}));
}

TEST(BSubstitutions, QuantifierFreeCutsOnly) { EXPECT_TRUE(b_substitutions(corpus_proof("qf-cut")).empty()); }

TEST(BSubstitutions, WeakenedExistentialSide) { EXPECT_TRUE(b_substitutions(corpus_proof("both-weakened")).empty()); }

TEST(CutBindings, BijectionWithCutEigenvariables) {
  for (const auto& n : oracle::corpus_names()) {
    Proof p = corpus_proof(n);
    auto bs = cut_bindings(p);
    std::set<std::string> evs;
    std::set<Locator> cuts;
    for (const auto& b : bs) {
      evs.insert(b.eigenvariable);
      cuts.insert(b.cut);
      EXPECT_EQ(node_at(p, b.forall)->eigenvariable, b.eigenvariable);
    }
    EXPECT_EQ(evs.size(), bs.size()) << n;
    EXPECT_EQ(cuts.size(), bs.size()) << n;
    EXPECT_EQ(evs, eigenvariables(p).evc) << n;
  }
}

TEST(RelativePosition, Examples) {
  Proof p = corpus_proof("nested-cuts");
  EXPECT_EQ(relative_position(p, {0, 0}, {0}), RelativePosition::LeftAbove);
  EXPECT_EQ(relative_position(p, {0, 1}, {0}), RelativePosition::RightAbove);
  EXPECT_EQ(relative_position(p, {0, 0}, {0, 1}), RelativePosition::Parallel);
  EXPECT_EQ(relative_position(p, {0, 0, 0}, {0, 0}), RelativePosition::AncestorLine);
  EXPECT_EQ(relative_position(p, {}, {0, 1, 0}), RelativePosition::AncestorLine);
  EXPECT_EQ(relative_position(p, {1}, {1}), RelativePosition::Same);
  EXPECT_THROW(relative_position(p, {7}, {}), Error);
}

TEST(ProofText, PrintParseRoundTrip) {
  for (const auto& n : oracle::corpus_names()) {
    Proof p = corpus_proof(n);
    Proof q = parse_proof(print_proof(p));
    EXPECT_EQ(print_proof(q), print_proof(p)) << n;
    EXPECT_EQ(proof_hash(q), proof_hash(p)) << n;
    EXPECT_EQ(q->conclusion, p->conclusion) << n;
  }
}

TEST(ProofText, ExchangeKeepsConclusionOrder) {
  Proof p = permute(parse_proof("(weak (ax P(c)) Q(d))"), {2, 0, 1});
  Proof q = parse_proof(print_proof(p));
  EXPECT_EQ(q->conclusion, p->conclusion);
  EXPECT_EQ(p->conclusion[0], F("Q(d)"));
}

TEST(ProofJson, HasStableNodeIds) {
  auto j = proof_to_json(corpus_proof("qcut"));
  auto k = proof_to_json(corpus_proof("qcut"));
  EXPECT_EQ(j.dump(), k.dump());
}
