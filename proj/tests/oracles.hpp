#pragma once
// Test-only reference implementations. They share no code with the library
// beyond the data types and are written for clarity, not speed.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hcont/hcont.hpp"

namespace oracle {

using namespace hcont;

inline Proof corpus_proof(const std::string& name) {
  return load_proof(std::string(HCONT_CORPUS_DIR) + "/" + name + ".proof");
}

inline std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : load_corpus(HCONT_CORPUS_DIR)) out.push_back(e.name);
  return out;
}

// All terms derivable by expanding non-terminal leaves one at a time,
// leftmost first, trying every production. When `rigid` is set, a derivation
// is kept only if every rigid non-terminal derived equal subterms at all of
// its positions. Returns nullopt beyond `limit` derivations.
inline std::optional<std::set<Term>> enumerate_language(const Grammar& g, bool rigid, std::size_t limit = 200000) {
  std::set<Term> out;
  std::size_t count = 0;
  struct Slot {
    std::string nt;
    Position pos;
  };
  std::function<bool(const Term&, std::vector<Slot>&)> rec = [&](const Term& t, std::vector<Slot>& slots) -> bool {
    // find leftmost non-terminal leaf
    std::optional<Position> at;
    std::function<void(const Term&, Position&)> find = [&](const Term& s, Position& p) {
      if (at) return;
      if (s.args.empty() && g.is_nonterminal(s.head)) {
        at = p;
        return;
      }
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        p.push_back(static_cast<int>(i + 1));
        find(s.args[i], p);
        p.pop_back();
      }
    };
    Position p;
    find(t, p);
    if (!at) {
      if (++count > limit) return false;
      if (rigid) {
        std::map<std::string, Term> seen;
        for (const auto& s : slots) {
          if (!g.rigid().count(s.nt)) continue;
          const Term& sub = subterm_at(t, s.pos);
          auto [it, fresh] = seen.emplace(s.nt, sub);
          if (!fresh && it->second != sub) return true;
        }
      }
      out.insert(t);
      return true;
    }
    const std::string nt = subterm_at(t, *at).head;
    for (const auto& prod : g.productions())
      if (prod.lhs == nt) {
        slots.push_back({nt, *at});
        bool ok = rec(replace_at(t, *at, prod.rhs), slots);
        slots.pop_back();
        if (!ok) return false;
      }
    return true;
  };
  std::vector<Slot> slots;
  if (!rec(Term(g.start()), slots)) return std::nullopt;
  return out;
}

// Random totally rigid acyclic grammar: non-terminal N_i only refers to N_j
// with j > i, so the grammar is acyclic by construction.
inline Grammar random_grammar(std::mt19937_64& rng, int max_nonterminals = 6) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  int n = 1 + pick(max_nonterminals);
  std::vector<std::string> nts;
  for (int i = 0; i < n; ++i) nts.push_back(i == 0 ? "S" : "N" + std::to_string(i));
  Grammar g("S");
  for (const auto& x : nts) g.add_nonterminal(x, true);
  std::function<Term(int, int)> rhs = [&](int self, int depth) -> Term {
    int r = pick(6);
    if (depth <= 0 || r < 2) {
      if (self + 1 < n && pick(2) == 0) return Term(nts[static_cast<std::size_t>(self + 1 + pick(n - self - 1))]);
      return Term(pick(2) ? "a" : "b");
    }
    if (r < 4) return Term("g", {rhs(self, depth - 1)});
    return Term("f", {rhs(self, depth - 1), rhs(self, depth - 1)});
  };
  for (int i = 0; i < n; ++i) {
    int k = 1 + pick(3);
    for (int j = 0; j < k; ++j) g.add_production(nts[static_cast<std::size_t>(i)], rhs(i, 2));
  }
  return g;
}

// Truth-table check; atoms are literals up to polarity.
inline bool truth_table_tautology(const FormulaSet& fs) {
  std::map<std::pair<std::string, std::vector<Term>>, int> atoms;
  std::function<void(const Formula&)> collect = [&](const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Literal: atoms.emplace(std::make_pair(f.name(), f.args()), static_cast<int>(atoms.size())); break;
      case FormulaKind::And:
      case FormulaKind::Or:
        collect(f.left());
        collect(f.right());
        break;
      default: break;
    }
  };
  for (const auto& f : fs) collect(f);
  if (atoms.size() > 22) throw std::runtime_error("too many atoms for a truth table");
  std::function<bool(const Formula&, std::uint64_t)> eval = [&](const Formula& f, std::uint64_t v) -> bool {
    switch (f.kind()) {
      case FormulaKind::Literal: {
        bool x = (v >> atoms.at({f.name(), f.args()})) & 1U;
        return f.positive() ? x : !x;
      }
      case FormulaKind::Top: return true;
      case FormulaKind::Bottom: return false;
      case FormulaKind::And: return eval(f.left(), v) && eval(f.right(), v);
      case FormulaKind::Or: return eval(f.left(), v) || eval(f.right(), v);
      default: throw std::runtime_error("quantified formula in truth table");
    }
  };
  for (std::uint64_t v = 0; v < (1ULL << atoms.size()); ++v) {
    bool any = false;
    for (const auto& f : fs)
      if (eval(f, v)) {
        any = true;
        break;
      }
    if (!any) return false;
  }
  return true;
}

// Renames eigenvariables to ev_1_, ev_2_, ... in pre-order so proofs that
// differ only in the choice of fresh names compare equal.
inline std::string canonical_text(const Proof& p) {
  Substitution s;
  int k = 0;
  for (const auto& e : eigenvariable_list(p))
    if (!s.count(e)) s[e] = Term("ev_" + std::to_string(++k) + "_");
  return print_proof(substitute_proof(p, s));
}

// Like canonical_text, but blind to the order of sequent occurrences: each
// node is rendered by its rule, the formulas it works on and its sorted
// conclusion, so proofs differing only in exchanges compare equal.
inline std::string text_modulo_exchange(const Proof& p) {
  Substitution s;
  int k = 0;
  for (const auto& e : eigenvariable_list(p))
    if (!s.count(e)) s[e] = Term("ev_" + std::to_string(++k) + "_");
  std::function<std::string(const Proof&)> rec = [&](const Proof& q) {
    std::vector<std::string> concl, aux;
    for (const auto& f : q->conclusion) concl.push_back(to_string(f));
    for (const auto& a : q->aux)
      aux.push_back(std::to_string(a.premise) + ":" + to_string(q->premises[a.premise]->conclusion[a.index]));
    std::sort(concl.begin(), concl.end());
    std::sort(aux.begin(), aux.end());
    std::string out = std::string("(") + to_string(q->rule);
    if (!q->eigenvariable.empty()) out += " ev " + q->eigenvariable;
    if (q->rule == Rule::Exists) out += " wit " + to_string(q->witness);
    out += " aux[";
    for (const auto& a : aux) out += a + ";";
    out += "] concl[";
    for (const auto& c : concl) out += c + ";";
    out += "]";
    for (const auto& pr : q->premises) out += " " + rec(pr);
    return out + ")";
  };
  return rec(substitute_proof(p, s));
}

inline Strategy strategy(Policy pol, std::uint64_t seed = 0, std::size_t budget = 100000) {
  Strategy s;
  s.policy = pol;
  s.seed = seed;
  s.budget = budget;
  return s;
}

}  // namespace oracle
