#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcont/herbrand.hpp"
#include "hcont/proof_io.hpp"
#include "hcont/reduction.hpp"

namespace hcont {

enum class Verdict { Confluent, Inconclusive, Violation };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Confluent: return "confluent";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Violation: return "violation";
  }
  return "?";
}

struct ConfluenceRun {
  Strategy strategy;
  Status status = Status::NormalForm;
  std::size_t steps = 0;
  Proof normal_form;
  std::optional<FormulaSet> content;  // set when a normal form was reached
  std::vector<Formula> multiset;      // Hseq(nf) with duplicates
  bool matches = false;               // equal (non-erasing) or ≤ (full) against the expected content
};

struct ConfluenceReport {
  Mode mode = Mode::NonErasing;
  FormulaSet expected;
  std::vector<ConfluenceRun> runs;
  Verdict verdict = Verdict::Inconclusive;
  bool multisets_differ = false;
};

/// The k strategies used by default: leftmost-innermost, rightmost-uppermost,
/// then random ones with consecutive seeds.
inline std::vector<Strategy> default_strategies(std::size_t k, std::uint64_t seed, std::size_t budget) {
  std::vector<Strategy> out;
  for (std::size_t i = 0; i < k; ++i) {
    Strategy s;
    s.budget = budget;
    if (i == 0) s.policy = Policy::LeftmostInnermost;
    else if (i == 1) s.policy = Policy::RightmostUppermost;
    else {
      s.policy = Policy::Random;
      s.seed = seed + (i - 2);
    }
    out.push_back(s);
  }
  return out;
}

/// Normalizes p under each strategy and compares the Herbrand-content of
/// every normal form with that of p. Non-erasing runs must agree exactly;
/// full runs only need to stay below it.
inline ConfluenceReport check_confluence(const Proof& p, const std::vector<Strategy>& strategies,
                                         Mode mode = Mode::NonErasing, std::size_t cap = default_language_cap) {
  require_simple(p);
  ConfluenceReport rep;
  rep.mode = mode;
  rep.expected = herbrand_content(p, cap);
  bool any = false, bad = false;
  for (const auto& s : strategies) {
    ConfluenceRun run;
    run.strategy = s;
    auto res = reduce(p, s, mode, {}, false);
    run.status = res.trace.status;
    run.steps = res.trace.steps.size();
    if (run.status == Status::NormalForm) {
      run.normal_form = res.proof;
      run.content = normal_form_content(res.proof);
      run.multiset = herbrand_multiset(res.proof);
      run.matches = mode == Mode::NonErasing ? *run.content == rep.expected
                                             : leq_formula_set(*run.content, rep.expected);
      any = true;
      if (!run.matches) bad = true;
    }
    rep.runs.push_back(std::move(run));
  }
  const std::vector<Formula>* first = nullptr;
  for (const auto& r : rep.runs) {
    if (!r.content) continue;
    if (!first) first = &r.multiset;
    else if (*first != r.multiset) rep.multisets_differ = true;
  }
  rep.verdict = bad ? Verdict::Violation : any ? Verdict::Confluent : Verdict::Inconclusive;
  return rep;
}

inline ConfluenceReport check_confluence(const Proof& p, std::size_t k = 5, std::uint64_t seed = 1,
                                         std::size_t budget = 100000, Mode mode = Mode::NonErasing,
                                         std::size_t cap = default_language_cap) {
  return check_confluence(p, default_strategies(k, seed, budget), mode, cap);
}

inline nlohmann::json confluence_to_json(const ConfluenceReport& r) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& x : r.runs) {
    nlohmann::json j = {{"strategy", to_string(x.strategy.policy)},
                        {"seed", x.strategy.seed},
                        {"status", to_string(x.status)},
                        {"steps", x.steps}};
    if (x.content) {
      j["content"] = formulas_to_json(*x.content);
      j["matches"] = x.matches;
      j["normal_form_hash"] = proof_hash(x.normal_form);
    }
    runs.push_back(j);
  }
  return {{"mode", r.mode == Mode::Full ? "full" : "noerase"},
          {"expected", formulas_to_json(r.expected)},
          {"runs", runs},
          {"multisets_differ", r.multisets_differ},
          {"verdict", to_string(r.verdict)}};
}

}  // namespace hcont
