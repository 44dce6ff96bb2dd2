#pragma once

#include <set>
#include <string>

#include "hcont/formula.hpp"
#include "hcont/grammar.hpp"
#include "hcont/proof.hpp"

namespace hcont {

/// Connective symbols of the grammar alphabet. Predicates with these names
/// cannot be encoded.
inline bool is_reserved_predicate(const std::string& n) {
  return n == "and" || n == "or" || n == "top" || n == "bot" || (!n.empty() && n[0] == '~');
}

/// Quantifier-free formula as a term: connectives become binary symbols,
/// P(ts) becomes P(ts) and ~P(ts) becomes "~P"(ts).
inline Term encode_formula(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Literal:
      if (is_reserved_predicate(f.name()))
        throw Error(ErrorKind::PreconditionViolated, "predicate name '" + f.name() + "' is reserved");
      return Term(f.positive() ? f.name() : "~" + f.name(), f.args());
    case FormulaKind::Top: return Term("top");
    case FormulaKind::Bottom: return Term("bot");
    case FormulaKind::And: return Term("and", {encode_formula(f.left()), encode_formula(f.right())});
    case FormulaKind::Or: return Term("or", {encode_formula(f.left()), encode_formula(f.right())});
    default: throw Error(ErrorKind::NotQuantifierFree, "cannot encode quantified formula " + to_string(f));
  }
}

inline Formula decode_formula(const Term& t) {
  if ((t.head == "and" || t.head == "or") && t.args.size() == 2) {
    Formula l = decode_formula(t.args[0]), r = decode_formula(t.args[1]);
    return t.head == "and" ? Formula::conj(l, r) : Formula::disj(l, r);
  }
  if (t.args.empty() && t.head == "top") return Formula::top();
  if (t.args.empty() && t.head == "bot") return Formula::bottom();
  if (t.head == "and" || t.head == "or" || t.head == "top" || t.head == "bot")
    throw Error(ErrorKind::ArityMismatch, "connective " + t.head + " with wrong arity");
  if (!t.head.empty() && t.head[0] == '~') return Formula::literal(t.head.substr(1), t.args, false);
  return Formula::literal(t.head, t.args, true);
}

inline FormulaSet decode_language(const Language& l) {
  FormulaSet r;
  for (const auto& t : l) r.insert(decode_formula(t));
  return r;
}

inline Language encode_formulas(const FormulaSet& fs) {
  Language r;
  for (const auto& f : fs) r.insert(encode_formula(f));
  return r;
}

/// "θ" unless the proof already uses it.
inline std::string fresh_start_symbol(const std::set<std::string>& used) {
  std::string s = "θ";
  for (int k = 1; used.count(s); ++k) s = "θ" + std::to_string(k);
  return s;
}

/// The totally rigid grammar of a simple proof: start productions from the
/// Herbrand-set, one production per cut-eigenvariable and witness term.
inline Grammar extract_grammar(const Proof& p) {
  require_simple(p);
  Grammar g(fresh_start_symbol(proof_names(p)));
  g.add_nonterminal(g.start(), true);
  auto bindings = cut_bindings(p);
  for (const auto& b : bindings) g.add_nonterminal(b.eigenvariable, true);
  for (const auto& a : herbrand_set(p)) g.add_production(g.start(), encode_formula(a), {Locator{}});
  for (const auto& b : bindings)
    for (const auto& [t, loc] : b.sources) g.add_production(b.eigenvariable, t, {loc});
  if (!is_acyclic(g)) throw Error(ErrorKind::NotAcyclic, "grammar of a simple proof is cyclic");
  return g;
}

/// L(G(π)) read back as formulas.
inline FormulaSet grammar_language(const Proof& p, std::size_t cap = default_language_cap) {
  return decode_language(compute_language(extract_grammar(p), cap));
}

}  // namespace hcont
