// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <iostream>
#include <sstream>

#include "oracles.hpp"

using namespace hcont;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void fail(const std::string& what) {
    if (ok) note << "first failure: " << what << "; ";
    ok = false;
  }
};

// Contents seen by criteria 1-7, validated by criterion 8.
std::vector<std::pair<std::vector<Formula>, FormulaSet>> g_contents;

void remember(const std::vector<Formula>& seq, const FormulaSet& c) { g_contents.emplace_back(seq, c); }

struct Subject {
  std::string name;
  Proof proof;
};

std::vector<Subject> corpus() {
  std::vector<Subject> out;
  for (const auto& e : load_corpus(HCONT_CORPUS_DIR)) out.push_back({e.name, load_proof(e.proof)});
  return out;
}

std::vector<Subject> generated() {
  std::vector<Subject> out;
  for (bool weak : {false, true})
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      GeneratorConfig c;
      c.seed = seed;
      c.weak = weak;
      c.max_cuts = 2;
      out.push_back({std::string(weak ? "weak" : "general") + "-seed-" + std::to_string(seed), generate_proof(c)});
    }
  return out;
}

std::vector<Subject> all_subjects() {
  auto a = corpus();
  for (auto& g : generated()) a.push_back(std::move(g));
  return a;
}

Outcome herbrand_confluence() {
  Outcome o;
  std::size_t runs = 0, normal = 0, inconclusive = 0;
  auto subjects = all_subjects();
  for (const auto& s : subjects) {
    auto rep = check_confluence(s.proof, 5, 1, 100000, Mode::NonErasing);
    remember(s.proof->conclusion, rep.expected);
    if (rep.verdict == Verdict::Inconclusive) ++inconclusive;
    for (const auto& r : rep.runs) {
      ++runs;
      if (!r.content) continue;
      ++normal;
      remember(s.proof->conclusion, *r.content);
      if (!r.matches) o.fail(s.name + " " + to_string(r.strategy.policy) + " seed " + std::to_string(r.strategy.seed));
    }
  }
  o.note << subjects.size() << " proofs, " << runs << " runs, " << normal << " normal forms, " << inconclusive
         << " inconclusive";
  return o;
}

Outcome step_local_invariance() {
  Outcome o;
  std::size_t steps = 0, weakening = 0;
  for (const auto& s : all_subjects()) {
    if (!is_weak(s.proof->conclusion)) continue;
    for (Mode m : {Mode::NonErasing, Mode::Full})
      for (const auto& st : default_strategies(5, 1, 100000))
        reduce(s.proof, st, m, [&](const Proof& before, const Proof& after, const StepRecord& rec) {
          ++steps;
          Language l0 = compute_language(extract_grammar(before));
          Language l1 = compute_language(extract_grammar(after));
          // a step counts as non-erasing when non-erasing mode admits it
          bool erasing = rec.redex.kind == StepKind::Weakening;
          if (!erasing && m == Mode::Full) {
            auto ok = Reducer(before, Mode::NonErasing).find_redexes(before);
            erasing = std::find(ok.begin(), ok.end(), rec.redex) == ok.end();
          }
          if (erasing) {
            ++weakening;
            if (!leq_formula_set(decode_language(l1), decode_language(l0))) o.fail(s.name + " " + to_string(rec.redex));
          } else if (l0 != l1) {
            o.fail(s.name + " " + to_string(rec.redex));
          }
        });
  }
  o.note << steps << " steps (" << weakening << " erasing)";
  return o;
}

Outcome grammar_lemmas() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::size_t derivations = 0, eliminations = 0;
  for (int i = 0; i < 200; ++i) {
    Grammar g = oracle::random_grammar(rng);
    Language lang = compute_language(g);
    auto brute = oracle::enumerate_language(g, true);
    if (!brute || *brute != lang) o.fail("language of grammar " + std::to_string(i));

    for (int k = 0; k < 10; ++k) {
      // random leftmost derivation
      Derivation d;
      Term cur(g.start());
      for (;;) {
        std::optional<Position> at;
        std::function<void(const Term&, Position&)> find = [&](const Term& t, Position& p) {
          if (at) return;
          if (t.args.empty() && g.is_nonterminal(t.head)) {
            at = p;
            return;
          }
          for (std::size_t a = 0; a < t.args.size(); ++a) {
            p.push_back(static_cast<int>(a + 1));
            find(t.args[a], p);
            p.pop_back();
          }
        };
        Position p;
        find(cur, p);
        if (!at) break;
        auto ps = g.productions_of(subterm_at(cur, *at).head);
        std::size_t pick = ps[rng() % ps.size()];
        d.push_back({*at, pick});
        cur = replace_at(cur, *at, g.productions()[pick].rhs);
      }
      if (check_rigidity(g, d)) continue;
      ++derivations;
      Derivation n = normalize_derivation(g, d);
      if (derive(g, n) != cur || check_rigidity(g, n)) o.fail("normalized derivation of grammar " + std::to_string(i));
      std::map<std::string, std::set<std::size_t>> used;
      for (const auto& st : n) used[g.productions()[st.production].lhs].insert(st.production);
      for (const auto& [nt, ps] : used)
        if (ps.size() > 1) o.fail("several " + nt + "-productions after normalization");
    }

    for (const auto& nt : g.nonterminals()) {
      if (nt == g.start() || g.productions_of(nt).size() != 1) continue;
      ++eliminations;
      if (compute_language(eliminate_nonterminal(g, nt)) != lang) o.fail("eliminating " + nt);
    }
  }
  o.note << "200 grammars, " << derivations << " rigid derivations, " << eliminations << " eliminations";
  return o;
}

Outcome grammar_acyclicity() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& s : all_subjects()) {
    ++n;
    if (!is_acyclic(extract_grammar(s.proof))) o.fail(s.name);
    reduce(s.proof, oracle::strategy(Policy::Random, 3), Mode::NonErasing,
           [&](const Proof&, const Proof& after, const StepRecord& rec) {
             ++n;
             if (!is_acyclic(extract_grammar(after))) o.fail(s.name + " after " + to_string(rec.redex));
           });
  }
  o.note << n << " proofs incl. intermediate ones";
  return o;
}

Outcome skolemization() {
  Outcome o;
  std::size_t mirrored = 0, silent = 0;
  for (const auto& s : corpus())
    for (Mode m : {Mode::NonErasing, Mode::Full})
      for (const auto& st : default_strategies(5, 1, 100000))
        reduce(s.proof, st, m, [&](const Proof& before, const Proof& after, const StepRecord& rec) {
          Proof a = skolemize_proof(before).proof, b = skolemize_proof(after).proof;
          std::string want = oracle::text_modulo_exchange(b);
          if (oracle::text_modulo_exchange(a) == want) {
            ++silent;
            return;
          }
          Reducer red(a, m);
          for (const auto& r : red.find_redexes(a)) {
            Reducer fresh(a, m);
            if (oracle::text_modulo_exchange(fresh.apply(a, r)) == want) {
              ++mirrored;
              return;
            }
          }
          o.fail(s.name + " " + to_string(rec.redex));
        });

  std::size_t commuting = 0;
  for (const auto& s : all_subjects()) {
    auto sk = skolemize_proof(s.proof);
    Language lhs = compute_language(extract_grammar(sk.proof));
    if (lhs != compute_language(substitute_grammar(extract_grammar(s.proof), sk.sigma))) o.fail("language of " + s.name);
    ++commuting;
  }

  auto check_instances = [&](const std::string& name, const InstanceSet& I) {
    auto m = make_skolem_map(I.sequent);
    FormulaSet sk = skolemize_instances(I, m);
    FormulaSet back = deskolemize_instances(sk, m);
    if (!is_herbrand_disjunction(I).ok()) o.fail(name + ": input is not a Herbrand-disjunction");
    if (!is_herbrand_disjunction(skolemize_sequent(m), sk).ok()) o.fail(name + ": Skolemized instances");
    if (!is_herbrand_disjunction(I.sequent, back).ok()) o.fail(name + ": deskolemized instances");
    if (formulas_to_json(back).dump() != formulas_to_json(canonical_rename(I)).dump())
      o.fail(name + ": deskolemize after skolemize differs from canonical renaming");
    remember(I.sequent, back);
  };
  for (const char* n : {"drinker", "two-conjunct"}) check_instances(n, instances_of(oracle::corpus_proof(n)));
  std::vector<Formula> seq = {parse_formula("(ex x (all y (or ~P(x,y) ~Q(x,y))))"),
                              parse_formula("(and (ex x1 P(c,x1)) (ex x2 Q(c,x2)))")};
  FormulaSet I = {parse_formula("(or ~P(c,α) ~Q(c,α))"), parse_formula("(or ~P(c,β) ~Q(c,β))"),
                  parse_formula("(and P(c,α) Q(c,β))")};
  check_instances("two-conjunct instances", match_instances(seq, I));

  o.note << mirrored << " steps mirrored by one step, " << silent << " by none; " << commuting
         << " proofs with commuting languages";
  return o;
}

Outcome spot_checks() {
  Outcome o;
  Grammar reg = parse_grammar("start α0; α0 -> f(α1,α1); α1 -> f(α2,α2); α2 -> c1 | c2;");
  std::size_t n = compute_regular_language(reg).size();
  if (n != 16) o.fail("regular language has " + std::to_string(n) + " terms");

  auto I = instances_of(oracle::corpus_proof("drinker"));
  auto term = [&](int i, int j, int k) { return I.term({i, j, k}) ? to_string(*I.term({i, j, k})) : "-"; };
  if (term(1, 1, 1) != "c" || term(1, 1, 2) != "α" || term(1, 2, 1) != "α" || term(1, 2, 2) != "β")
    o.fail("drinker term table");
  auto d = dependency(I);
  std::set<std::pair<InstancePosition, InstancePosition>> want = {{{1, 1, 1}, {1, 1, 2}}};
  if (d.prec != want) o.fail("drinker dependency relation");

  std::vector<Formula> seq = {parse_formula("(ex x (all y (or ~P(x,y) ~Q(x,y))))"),
                              parse_formula("(and (ex x1 P(c,x1)) (ex x2 Q(c,x2)))")};
  FormulaSet fs = {parse_formula("(or ~P(c,α) ~Q(c,α))"), parse_formula("(or ~P(c,β) ~Q(c,β))"),
                   parse_formula("(and P(c,α) Q(c,β))")};
  std::size_t k = skolemize_instances(match_instances(seq, fs)).size();
  if (k != 2) o.fail("two-conjunct Skolemization has " + std::to_string(k) + " instances");
  o.note << "regular language " << n << ", Skolemized two-conjunct instances " << k;
  return o;
}

Outcome nonconfluence_witness() {
  Outcome o;
  Proof p = oracle::corpus_proof("double-contraction");
  FormulaSet h = herbrand_content(p);
  remember(p->conclusion, h);
  std::vector<std::vector<Formula>> multisets;
  for (int first : {0, 1}) {
    Strategy s;
    s.policy = Policy::Scripted;
    s.script = {first};
    auto r = reduce(p, s, Mode::Full);
    if (r.trace.status != Status::NormalForm) {
      o.fail("no normal form");
      continue;
    }
    FormulaSet c = normal_form_content(r.proof);
    remember(p->conclusion, c);
    if (!leq_formula_set(c, h)) o.fail("content above the Herbrand-content");
    multisets.push_back(herbrand_multiset(r.proof));
  }
  bool differ = multisets.size() == 2 && multisets[0] != multisets[1];
  if (!differ) o.fail("multisets agree");
  o.note << "multisets " << (differ ? "differ" : "agree");
  return o;
}

Outcome tautology_validation() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& [seq, c] : g_contents) {
    ++n;
    auto r = is_herbrand_disjunction(seq, c);
    if (!r.ok()) o.fail(r.reason());
  }
  o.note << n << " contents";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"Herbrand-confluence of non-erasing reduction", herbrand_confluence},
      {"step-local language invariance", step_local_invariance},
      {"grammar language, normalization and elimination", grammar_lemmas},
      {"acyclicity of proof grammars", grammar_acyclicity},
      {"Skolemization commutes with reduction and grammars", skolemization},
      {"quantitative spot-checks", spot_checks},
      {"non-confluence witness under full reduction", nonconfluence_witness},
      {"contents are Herbrand-disjunctions", tautology_validation},
  };
  int failed = 0, i = 0;
  for (const auto& c : criteria) {
    ++i;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << i << ": " << (o.ok ? "PASS" : "FAIL") << "  " << c.name << "  [" << o.note.str()
              << "; " << static_cast<int>(secs * 10) / 10.0 << "s]" << std::endl;
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
