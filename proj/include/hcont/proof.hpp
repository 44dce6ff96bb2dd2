#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "hcont/formula.hpp"
#include "hcont/syntax.hpp"
#include "hcont/term.hpp"

namespace hcont {

enum class Rule { Ax, Top, Weak, Cont, Cut, Or, And, Forall, Exists };

inline const char* to_string(Rule r) {
  switch (r) {
    case Rule::Ax: return "ax";
    case Rule::Top: return "top";
    case Rule::Weak: return "weak";
    case Rule::Cont: return "cont";
    case Rule::Cut: return "cut";
    case Rule::Or: return "or";
    case Rule::And: return "and";
    case Rule::Forall: return "all";
    case Rule::Exists: return "ex";
  }
  return "?";
}

/// Where a conclusion occurrence comes from: premise -1 marks the main
/// occurrence (or an axiom formula), otherwise the occurrence `index` of
/// premise `premise`.
struct Origin {
  int premise = -1;
  int index = 0;
  friend bool operator==(const Origin&, const Origin&) = default;
  friend auto operator<=>(const Origin&, const Origin&) = default;
};

struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

struct ProofNode {
  Rule rule = Rule::Ax;
  std::vector<Proof> premises;
  std::vector<Formula> conclusion;
  std::vector<Origin> origin;
  std::vector<Origin> aux;
  std::string eigenvariable;
  Term witness;
  std::size_t size = 1;

  bool is_main(std::size_t i) const { return origin[i].premise < 0; }
  int main_index() const {
    for (std::size_t i = 0; i < origin.size(); ++i)
      if (origin[i].premise < 0) return static_cast<int>(i);
    return -1;
  }
  /// Conclusion index of the occurrence descending from premise occurrence (p, j), or -1.
  int descendant_of(int p, int j) const {
    for (std::size_t i = 0; i < origin.size(); ++i)
      if (origin[i].premise == p && origin[i].index == j) return static_cast<int>(i);
    return -1;
  }
  bool is_aux(int p, int j) const {
    for (const auto& a : aux)
      if (a.premise == p && a.index == j) return true;
    return false;
  }
};

/// Child-index list from the root (0-based).
using Locator = std::vector<int>;

inline std::string to_string(const Locator& l) {
  if (l.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(l[i]);
  }
  return s;
}

struct OccurrencePath {
  Locator node;
  int index = 0;
};

struct Diagnostic {
  Locator locator;
  std::string reason;
};

namespace detail {

inline std::optional<std::string> validate_node(const ProofNode& n) {
  auto nprem = [&](std::size_t k) { return n.premises.size() == k; };
  switch (n.rule) {
    case Rule::Ax:
    case Rule::Top:
      if (!nprem(0)) return "axiom with premises";
      break;
    case Rule::Weak:
    case Rule::Cont:
    case Rule::Or:
    case Rule::Forall:
    case Rule::Exists:
      if (!nprem(1)) return "unary rule needs one premise";
      break;
    case Rule::Cut:
    case Rule::And:
      if (!nprem(2)) return "binary rule needs two premises";
      break;
  }
  if (n.origin.size() != n.conclusion.size()) return "origin table size mismatch";
  for (const auto& a : n.aux) {
    if (a.premise < 0 || static_cast<std::size_t>(a.premise) >= n.premises.size()) return "bad auxiliary premise";
    if (a.index < 0 || static_cast<std::size_t>(a.index) >= n.premises[a.premise]->conclusion.size())
      return "auxiliary index out of range";
  }
  for (std::size_t i = 0; i < n.aux.size(); ++i)
    for (std::size_t j = i + 1; j < n.aux.size(); ++j)
      if (n.aux[i] == n.aux[j]) return "auxiliary occurrences coincide";
  auto pf = [&](const Origin& o) -> const Formula& { return n.premises[o.premise]->conclusion[o.index]; };

  // Context: every non-auxiliary premise occurrence appears exactly once.
  std::set<Origin> seen;
  int mains = 0;
  for (std::size_t i = 0; i < n.origin.size(); ++i) {
    const auto& o = n.origin[i];
    if (o.premise < 0) {
      ++mains;
      continue;
    }
    if (static_cast<std::size_t>(o.premise) >= n.premises.size() || o.index < 0 ||
        static_cast<std::size_t>(o.index) >= n.premises[o.premise]->conclusion.size())
      return "origin out of range";
    if (n.is_aux(o.premise, o.index)) return "auxiliary occurrence copied to conclusion";
    if (!seen.insert(o).second) return "premise occurrence copied twice";
    if (!(pf(o) == n.conclusion[i])) return "context formula changed";
  }
  std::size_t premise_total = 0;
  for (const auto& p : n.premises) premise_total += p->conclusion.size();
  if (seen.size() + n.aux.size() != premise_total) return "premise occurrence lost";

  const int mi = n.main_index();
  switch (n.rule) {
    case Rule::Ax: {
      if (n.conclusion.size() != 2 || mains != 2) return "axiom must conclude two formulas";
      if (!n.conclusion[0].is_literal()) return "axiom formula is not a literal";
      if (!(n.conclusion[1] == dual(n.conclusion[0]))) return "axiom formulas are not dual";
      return std::nullopt;
    }
    case Rule::Top:
      if (n.conclusion.size() != 1 || n.conclusion[0].kind() != FormulaKind::Top) return "top rule must conclude top";
      return std::nullopt;
    case Rule::Cut:
      if (mains != 0) return "cut has no main formula";
      if (n.aux.size() != 2 || n.aux[0].premise != 0 || n.aux[1].premise != 1) return "cut needs one formula per premise";
      if (!(pf(n.aux[1]) == dual(pf(n.aux[0])))) return "cut formulas are not dual";
      return std::nullopt;
    default: break;
  }
  if (mains != 1) return "rule needs exactly one main occurrence";
  const Formula& main = n.conclusion[static_cast<std::size_t>(mi)];
  switch (n.rule) {
    case Rule::Weak:
      if (!n.aux.empty()) return "weakening has no auxiliary formula";
      break;
    case Rule::Cont:
      if (n.aux.size() != 2 || n.aux[0].premise != 0 || n.aux[1].premise != 0) return "contraction needs two occurrences";
      if (!(pf(n.aux[0]) == pf(n.aux[1])) || !(pf(n.aux[0]) == main)) return "contracted formulas differ";
      break;
    case Rule::Or:
      if (n.aux.size() != 2 || n.aux[0].premise != 0 || n.aux[1].premise != 0) return "or needs two occurrences";
      if (!(main == Formula::disj(pf(n.aux[0]), pf(n.aux[1])))) return "or main formula mismatch";
      break;
    case Rule::And:
      if (n.aux.size() != 2 || n.aux[0].premise != 0 || n.aux[1].premise != 1) return "and needs one formula per premise";
      if (!(main == Formula::conj(pf(n.aux[0]), pf(n.aux[1])))) return "and main formula mismatch";
      break;
    case Rule::Forall: {
      if (n.aux.size() != 1 || main.kind() != FormulaKind::Forall) return "all main formula is not universal";
      if (n.eigenvariable.empty()) return "missing eigenvariable";
      try {
        if (!(pf(n.aux[0]) == instantiate(main, Term(n.eigenvariable)))) return "all premise is not the instance";
      } catch (const Error&) {
        return "eigenvariable captured";
      }
      for (const auto& f : n.conclusion)
        if (occurs_free(n.eigenvariable, f)) return "eigenvariable-violation: " + n.eigenvariable + " occurs in conclusion";
      break;
    }
    case Rule::Exists: {
      if (n.aux.size() != 1 || main.kind() != FormulaKind::Exists) return "ex main formula is not existential";
      std::set<std::string> names;
      collect_names(n.witness, names);
      for (const auto& b : bound_variable_set(main.body()))
        if (names.count(b)) return "bound-capture: witness contains bound variable " + b;
      try {
        if (!(pf(n.aux[0]) == instantiate(main, n.witness))) return "ex premise is not the instance";
      } catch (const Error&) {
        return "bound-capture";
      }
      break;
    }
    default: break;
  }
  return std::nullopt;
}

inline Proof finish(ProofNode n) {
  n.size = 1;
  for (const auto& p : n.premises) n.size += p->size;
  if (auto err = validate_node(n)) throw Error(ErrorKind::NotWellFormed, std::string(to_string(n.rule)) + ": " + *err);
  return std::make_shared<const ProofNode>(std::move(n));
}

// Default conclusion order: each premise minus its auxiliary occurrences, then the main formula.
inline void assemble(ProofNode& n, const std::optional<Formula>& main) {
  for (std::size_t p = 0; p < n.premises.size(); ++p) {
    if (!n.premises[p]) throw Error(ErrorKind::NotWellFormed, "null premise");
    const auto& c = n.premises[p]->conclusion;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (n.is_aux(static_cast<int>(p), static_cast<int>(j))) continue;
      n.conclusion.push_back(c[j]);
      n.origin.push_back({static_cast<int>(p), static_cast<int>(j)});
    }
  }
  if (main) {
    n.conclusion.push_back(*main);
    n.origin.push_back({-1, 0});
  }
}

inline const Formula& premise_formula(const Proof& p, int i) {
  if (i < 0 || static_cast<std::size_t>(i) >= p->conclusion.size())
    throw Error(ErrorKind::NotWellFormed, "occurrence index " + std::to_string(i) + " out of range");
  return p->conclusion[static_cast<std::size_t>(i)];
}

}  // namespace detail

inline Proof make_ax(const Formula& a) {
  ProofNode n;
  n.rule = Rule::Ax;
  n.conclusion = {a, dual(a)};
  n.origin = {{-1, 0}, {-1, 1}};
  return detail::finish(std::move(n));
}

inline Proof make_top() {
  ProofNode n;
  n.rule = Rule::Top;
  n.conclusion = {Formula::top()};
  n.origin = {{-1, 0}};
  return detail::finish(std::move(n));
}

inline Proof make_weak(const Proof& p, const Formula& a) {
  ProofNode n;
  n.rule = Rule::Weak;
  n.premises = {p};
  detail::assemble(n, a);
  return detail::finish(std::move(n));
}

inline Proof make_cont(const Proof& p, int i, int j) {
  ProofNode n;
  n.rule = Rule::Cont;
  n.premises = {p};
  n.aux = {{0, i}, {0, j}};
  detail::assemble(n, detail::premise_formula(p, i));
  return detail::finish(std::move(n));
}

inline Proof make_cut(const Proof& l, const Proof& r, int il, int ir) {
  ProofNode n;
  n.rule = Rule::Cut;
  n.premises = {l, r};
  n.aux = {{0, il}, {1, ir}};
  detail::premise_formula(l, il);
  detail::premise_formula(r, ir);
  detail::assemble(n, std::nullopt);
  return detail::finish(std::move(n));
}

inline Proof make_or(const Proof& p, int i, int j) {
  ProofNode n;
  n.rule = Rule::Or;
  n.premises = {p};
  n.aux = {{0, i}, {0, j}};
  detail::assemble(n, Formula::disj(detail::premise_formula(p, i), detail::premise_formula(p, j)));
  return detail::finish(std::move(n));
}

inline Proof make_and(const Proof& l, const Proof& r, int il, int ir) {
  ProofNode n;
  n.rule = Rule::And;
  n.premises = {l, r};
  n.aux = {{0, il}, {1, ir}};
  detail::assemble(n, Formula::conj(detail::premise_formula(l, il), detail::premise_formula(r, ir)));
  return detail::finish(std::move(n));
}

inline Proof make_all(const Proof& p, int i, const std::string& eigenvariable, const Formula& main) {
  ProofNode n;
  n.rule = Rule::Forall;
  n.premises = {p};
  n.aux = {{0, i}};
  n.eigenvariable = eigenvariable;
  detail::premise_formula(p, i);
  detail::assemble(n, main);
  return detail::finish(std::move(n));
}

inline Proof make_ex(const Proof& p, int i, const Term& witness, const Formula& main) {
  ProofNode n;
  n.rule = Rule::Exists;
  n.premises = {p};
  n.aux = {{0, i}};
  n.witness = witness;
  detail::premise_formula(p, i);
  detail::assemble(n, main);
  return detail::finish(std::move(n));
}

/// Reorders the conclusion: occurrence k of the result is occurrence order[k] of p.
inline Proof permute(const Proof& p, const std::vector<int>& order) {
  if (order.size() != p->conclusion.size()) throw Error(ErrorKind::NotWellFormed, "permutation size mismatch");
  bool identity = true;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (order[k] != static_cast<int>(k)) identity = false;
  if (identity) return p;
  ProofNode n = *p;
  std::vector<bool> used(order.size(), false);
  for (std::size_t k = 0; k < order.size(); ++k) {
    int o = order[k];
    if (o < 0 || static_cast<std::size_t>(o) >= order.size() || used[static_cast<std::size_t>(o)])
      throw Error(ErrorKind::NotWellFormed, "not a permutation");
    used[static_cast<std::size_t>(o)] = true;
    n.conclusion[k] = p->conclusion[static_cast<std::size_t>(o)];
    n.origin[k] = p->origin[static_cast<std::size_t>(o)];
  }
  return std::make_shared<const ProofNode>(std::move(n));
}

inline const Proof& node_at(const Proof& p, const Locator& loc) {
  const Proof* cur = &p;
  for (int i : loc) {
    if (i < 0 || static_cast<std::size_t>(i) >= (*cur)->premises.size())
      throw Error(ErrorKind::InvalidLocator, "no node at " + to_string(loc));
    cur = &(*cur)->premises[static_cast<std::size_t>(i)];
  }
  return *cur;
}

/// Replace the subproof at `loc`; the replacement must have the same conclusion sequence.
inline Proof replace_node(const Proof& p, const Locator& loc, const Proof& by, std::size_t from = 0) {
  if (from == loc.size()) {
    if (by->conclusion != p->conclusion) throw Error(ErrorKind::NotWellFormed, "replacement changes the conclusion");
    return by;
  }
  int i = loc[from];
  if (i < 0 || static_cast<std::size_t>(i) >= p->premises.size())
    throw Error(ErrorKind::InvalidLocator, "no node at " + to_string(loc));
  ProofNode n = *p;
  n.premises[static_cast<std::size_t>(i)] = replace_node(p->premises[static_cast<std::size_t>(i)], loc, by, from + 1);
  n.size = 1;
  for (const auto& q : n.premises) n.size += q->size;
  return std::make_shared<const ProofNode>(std::move(n));
}

/// Number of inference occurrences.
inline std::size_t proof_size(const Proof& p) { return p->size; }

inline void for_each_node(const Proof& p, const std::function<void(const Proof&, const Locator&)>& f) {
  Locator loc;
  std::function<void(const Proof&)> rec = [&](const Proof& q) {
    f(q, loc);
    for (std::size_t i = 0; i < q->premises.size(); ++i) {
      loc.push_back(static_cast<int>(i));
      rec(q->premises[i]);
      loc.pop_back();
    }
  };
  rec(p);
}

inline std::vector<std::string> eigenvariable_list(const Proof& p) {
  std::vector<std::string> out;
  for_each_node(p, [&](const Proof& q, const Locator&) {
    if (q->rule == Rule::Forall) out.push_back(q->eigenvariable);
  });
  return out;
}

inline bool is_regular(const Proof& p) {
  auto v = eigenvariable_list(p);
  std::set<std::string> s(v.begin(), v.end());
  return s.size() == v.size();
}

inline bool is_weak(const std::vector<Formula>& seq) {
  return std::none_of(seq.begin(), seq.end(), [](const Formula& f) { return contains_forall(f); });
}

namespace detail {
// For each premise occurrence, the conclusion occurrence it descends into
// (-1 for cut formulas, the main index for auxiliary formulas).
inline std::vector<std::vector<int>> descendant_table(const ProofNode& n) {
  std::vector<std::vector<int>> t(n.premises.size());
  for (std::size_t p = 0; p < n.premises.size(); ++p) t[p].assign(n.premises[p]->conclusion.size(), -1);
  for (std::size_t i = 0; i < n.origin.size(); ++i)
    if (n.origin[i].premise >= 0) t[n.origin[i].premise][n.origin[i].index] = static_cast<int>(i);
  if (n.rule != Rule::Cut)
    for (const auto& a : n.aux) t[a.premise][a.index] = n.main_index();
  return t;
}
}  // namespace detail

/// Calls f on every node with, per conclusion occurrence, whether it traces
/// down to a cut formula (true) or to the end-sequent (false).
inline void walk_ancestry(const Proof& p,
                          const std::function<void(const Proof&, const Locator&, const std::vector<bool>&)>& f) {
  Locator loc;
  std::function<void(const Proof&, const std::vector<bool>&)> rec = [&](const Proof& q, const std::vector<bool>& tags) {
    f(q, loc, tags);
    auto table = detail::descendant_table(*q);
    for (std::size_t i = 0; i < q->premises.size(); ++i) {
      std::vector<bool> pt(q->premises[i]->conclusion.size());
      for (std::size_t j = 0; j < pt.size(); ++j) {
        int d = table[i][j];
        pt[j] = d < 0 ? true : tags[static_cast<std::size_t>(d)];
      }
      loc.push_back(static_cast<int>(i));
      rec(q->premises[i], pt);
      loc.pop_back();
    }
  };
  rec(p, std::vector<bool>(p->conclusion.size(), false));
}

struct Eigenvariables {
  std::set<std::string> ev;
  std::set<std::string> evc;
};

inline Eigenvariables eigenvariables(const Proof& p) {
  Eigenvariables r;
  walk_ancestry(p, [&](const Proof& q, const Locator&, const std::vector<bool>& tags) {
    if (q->rule != Rule::Forall) return;
    r.ev.insert(q->eigenvariable);
    if (tags[static_cast<std::size_t>(q->main_index())]) r.evc.insert(q->eigenvariable);
  });
  return r;
}

inline bool unique_bound_variables(const Formula& f) {
  std::vector<std::string> v;
  bound_variables(f, v);
  std::set<std::string> s(v.begin(), v.end());
  return s.size() == v.size();
}

/// Checks every rule instance, eigenvariable locality (an eigenvariable only
/// occurs in sequents above its own inference) and unique binding of
/// variables in end-sequent and cut formulas.
inline std::optional<Diagnostic> check_wellformed(const Proof& p) {
  std::optional<Diagnostic> diag;
  std::set<std::string> ev;
  for (const auto& e : eigenvariable_list(p)) ev.insert(e);
  Locator loc;
  std::function<bool(const Proof&, std::set<std::string>&)> rec = [&](const Proof& q, std::set<std::string>& allowed) {
    if (auto err = detail::validate_node(*q)) {
      diag = Diagnostic{loc, *err};
      return false;
    }
    std::size_t sz = 1;
    for (const auto& c : q->premises) sz += c->size;
    if (sz != q->size) {
      diag = Diagnostic{loc, "stale size field"};
      return false;
    }
    for (const auto& f : q->conclusion) {
      std::set<std::string> names;
      free_names(f, names);
      for (const auto& nm : names)
        if (ev.count(nm) && !allowed.count(nm)) {
          diag = Diagnostic{loc, "eigenvariable-violation: " + nm + " occurs outside the scope of its inference"};
          return false;
        }
    }
    if (q->rule == Rule::Exists) {
      std::set<std::string> names;
      collect_names(q->witness, names);
      for (const auto& nm : names)
        if (ev.count(nm) && !allowed.count(nm)) {
          diag = Diagnostic{loc, "eigenvariable-violation: witness mentions " + nm};
          return false;
        }
    }
    if (q->rule == Rule::Cut) {
      const auto& cf = q->premises[0]->conclusion[static_cast<std::size_t>(q->aux[0].index)];
      if (!unique_bound_variables(cf)) {
        diag = Diagnostic{loc, "cut formula binds a variable twice"};
        return false;
      }
    }
    bool added = false;
    if (q->rule == Rule::Forall) added = allowed.insert(q->eigenvariable).second;
    for (std::size_t i = 0; i < q->premises.size(); ++i) {
      loc.push_back(static_cast<int>(i));
      bool ok = rec(q->premises[i], allowed);
      loc.pop_back();
      if (!ok) return false;
    }
    if (added) allowed.erase(q->eigenvariable);
    return true;
  };
  for (const auto& f : p->conclusion)
    if (!unique_bound_variables(f)) return Diagnostic{{}, "end-sequent formula binds a variable twice"};
  std::set<std::string> allowed;
  rec(p, allowed);
  return diag;
}

/// Which premise of a quantified cut carries the universal formula, or -1
/// for a quantifier-free cut.
inline int universal_side(const ProofNode& cut) {
  const auto& a = cut.premises[0]->conclusion[static_cast<std::size_t>(cut.aux[0].index)];
  if (quantifier_free(a)) return -1;
  return a.kind() == FormulaKind::Forall ? 0 : 1;
}

/// nullopt when the proof is simple, otherwise the first offending node.
inline std::optional<Diagnostic> simple_diagnostic(const Proof& p) {
  if (!is_regular(p)) return Diagnostic{{}, "proof is not regular"};
  std::optional<Diagnostic> diag;
  for_each_node(p, [&](const Proof& q, const Locator& loc) {
    if (diag || q->rule != Rule::Cut) return;
    const auto& a = q->premises[0]->conclusion[static_cast<std::size_t>(q->aux[0].index)];
    if (quantifier_free(a)) return;
    if (!a.is_quantifier() || !quantifier_free(a.body())) {
      diag = Diagnostic{loc, "cut formula " + to_string(a) + " is neither quantifier-free nor a single quantifier"};
      return;
    }
    int u = universal_side(*q);
    const auto& up = q->premises[static_cast<std::size_t>(u)];
    if (up->rule != Rule::Forall || up->main_index() != q->aux[static_cast<std::size_t>(u)].index)
      diag = Diagnostic{loc, "universal cut formula is not introduced directly above the cut"};
  });
  return diag;
}

inline bool is_simple(const Proof& p) { return !simple_diagnostic(p).has_value(); }

inline void require_simple(const Proof& p) {
  if (auto d = simple_diagnostic(p)) throw Error(ErrorKind::NotSimple, d->reason + " at " + to_string(d->locator));
}

/// Herbrand-set of every conclusion occurrence of every node (memoized per node).
class HerbrandSets {
 public:
  const std::vector<FormulaSet>& of(const Proof& p) {
    auto it = memo_.find(p.get());
    if (it != memo_.end()) return it->second;
    std::vector<FormulaSet> out(p->conclusion.size());
    std::vector<const std::vector<FormulaSet>*> prem;
    for (const auto& q : p->premises) prem.push_back(&of(q));
    auto aux_set = [&](std::size_t k) -> const FormulaSet& { return (*prem[p->aux[k].premise])[p->aux[k].index]; };
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& o = p->origin[i];
      if (o.premise >= 0) {
        out[i] = (*prem[o.premise])[o.index];
        continue;
      }
      switch (p->rule) {
        case Rule::Ax:
        case Rule::Top: out[i] = {p->conclusion[i]}; break;
        case Rule::Weak: out[i] = {Formula::bottom()}; break;
        case Rule::Cont:
          out[i] = aux_set(0);
          out[i].insert(aux_set(1).begin(), aux_set(1).end());
          break;
        case Rule::Or:
        case Rule::And:
          for (const auto& a : aux_set(0))
            for (const auto& b : aux_set(1))
              out[i].insert(p->rule == Rule::Or ? Formula::disj(a, b) : Formula::conj(a, b));
          break;
        case Rule::Forall:
        case Rule::Exists: out[i] = aux_set(0); break;
        case Rule::Cut: break;
      }
    }
    return memo_.emplace(p.get(), std::move(out)).first->second;
  }

 private:
  std::unordered_map<const ProofNode*, std::vector<FormulaSet>> memo_;
  // Keeps memo keys alive.
};

inline FormulaSet herbrand_set(const Proof& p) {
  HerbrandSets hs;
  FormulaSet r;
  for (const auto& s : hs.of(p)) r.insert(s.begin(), s.end());
  return r;
}

/// Multiset variant: duplicates are kept (sorted vector).
inline std::vector<Formula> herbrand_multiset(const Proof& p) {
  std::unordered_map<const ProofNode*, std::vector<std::vector<Formula>>> memo;
  std::function<const std::vector<std::vector<Formula>>&(const Proof&)> of =
      [&](const Proof& q) -> const std::vector<std::vector<Formula>>& {
    auto it = memo.find(q.get());
    if (it != memo.end()) return it->second;
    std::vector<std::vector<Formula>> out(q->conclusion.size());
    std::vector<const std::vector<std::vector<Formula>>*> prem;
    for (const auto& c : q->premises) prem.push_back(&of(c));
    auto aux_set = [&](std::size_t k) -> const std::vector<Formula>& {
      return (*prem[q->aux[k].premise])[q->aux[k].index];
    };
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& o = q->origin[i];
      if (o.premise >= 0) {
        out[i] = (*prem[o.premise])[o.index];
        continue;
      }
      switch (q->rule) {
        case Rule::Ax:
        case Rule::Top: out[i] = {q->conclusion[i]}; break;
        case Rule::Weak: out[i] = {Formula::bottom()}; break;
        case Rule::Cont:
          out[i] = aux_set(0);
          out[i].insert(out[i].end(), aux_set(1).begin(), aux_set(1).end());
          break;
        case Rule::Or:
        case Rule::And:
          for (const auto& a : aux_set(0))
            for (const auto& b : aux_set(1))
              out[i].push_back(q->rule == Rule::Or ? Formula::disj(a, b) : Formula::conj(a, b));
          break;
        case Rule::Forall:
        case Rule::Exists: out[i] = aux_set(0); break;
        case Rule::Cut: break;
      }
    }
    return memo.emplace(q.get(), std::move(out)).first->second;
  };
  std::vector<Formula> r;
  for (const auto& s : of(p)) r.insert(r.end(), s.begin(), s.end());
  std::sort(r.begin(), r.end());
  return r;
}

/// terms(Q) together with the locator of each contributing ex-inference.
inline std::vector<std::pair<Term, Locator>> term_sources(const Proof& p, const OccurrencePath& q) {
  const Proof& start = node_at(p, q.node);
  if (q.index < 0 || static_cast<std::size_t>(q.index) >= start->conclusion.size())
    throw Error(ErrorKind::InvalidLocator, "occurrence index out of range");
  if (start->conclusion[static_cast<std::size_t>(q.index)].kind() != FormulaKind::Exists)
    throw Error(ErrorKind::NotExistential, "occurrence is not an existential formula");
  std::vector<std::pair<Term, Locator>> out;
  Locator loc = q.node;
  std::function<void(const Proof&, int)> rec = [&](const Proof& n, int i) {
    const auto& o = n->origin[static_cast<std::size_t>(i)];
    if (o.premise >= 0) {
      loc.push_back(o.premise);
      rec(n->premises[static_cast<std::size_t>(o.premise)], o.index);
      loc.pop_back();
      return;
    }
    switch (n->rule) {
      case Rule::Exists: out.emplace_back(n->witness, loc); break;
      case Rule::Cont:
        for (const auto& a : n->aux) {
          loc.push_back(0);
          rec(n->premises[0], a.index);
          loc.pop_back();
        }
        break;
      default: break;
    }
  };
  rec(start, q.index);
  return out;
}

inline std::set<Term> terms_of(const Proof& p, const OccurrencePath& q) {
  std::set<Term> r;
  for (auto& [t, l] : term_sources(p, q)) r.insert(t);
  return r;
}

/// The 1-1 link between a cut-eigenvariable and its cut in a simple proof.
struct CutBinding {
  std::string eigenvariable;
  Locator cut;
  Locator forall;
  OccurrencePath existential;
  std::vector<std::pair<Term, Locator>> sources;
};

inline std::vector<CutBinding> cut_bindings(const Proof& p) {
  require_simple(p);
  std::vector<CutBinding> out;
  for_each_node(p, [&](const Proof& q, const Locator& loc) {
    if (q->rule != Rule::Cut) return;
    int u = universal_side(*q);
    if (u < 0) return;
    CutBinding b;
    b.eigenvariable = q->premises[static_cast<std::size_t>(u)]->eigenvariable;
    b.cut = loc;
    b.forall = loc;
    b.forall.push_back(u);
    b.existential.node = loc;
    b.existential.node.push_back(1 - u);
    b.existential.index = q->aux[static_cast<std::size_t>(1 - u)].index;
    b.sources = term_sources(p, b.existential);
    out.push_back(std::move(b));
  });
  return out;
}

/// B(pi) as a set of single-variable substitutions [alpha\t].
inline std::set<std::pair<std::string, Term>> b_substitutions(const Proof& p) {
  std::set<std::pair<std::string, Term>> out;
  for (const auto& b : cut_bindings(p))
    for (const auto& [t, l] : b.sources) out.insert({b.eigenvariable, t});
  return out;
}

enum class RelativePosition { LeftAbove, RightAbove, Parallel, Same, AncestorLine };

inline const char* to_string(RelativePosition r) {
  switch (r) {
    case RelativePosition::LeftAbove: return "left-above";
    case RelativePosition::RightAbove: return "right-above";
    case RelativePosition::Parallel: return "parallel";
    case RelativePosition::Same: return "same";
    case RelativePosition::AncestorLine: return "ancestor-line";
  }
  return "?";
}

/// Position of r1 relative to r2.
inline RelativePosition relative_position(const Proof& p, const Locator& r1, const Locator& r2) {
  node_at(p, r1);
  const Proof& n2 = node_at(p, r2);
  if (r1 == r2) return RelativePosition::Same;
  std::size_t c = 0;
  while (c < r1.size() && c < r2.size() && r1[c] == r2[c]) ++c;
  if (c == r2.size()) {
    if (n2->premises.size() == 2) return r1[c] == 0 ? RelativePosition::LeftAbove : RelativePosition::RightAbove;
    return RelativePosition::AncestorLine;
  }
  if (c == r1.size()) return RelativePosition::AncestorLine;
  return RelativePosition::Parallel;
}

/// Applies a substitution to every formula and witness; eigenvariables mapped
/// to nullary terms are renamed.
inline Proof substitute_proof(const Proof& p, const Substitution& s) {
  if (s.empty()) return p;
  std::unordered_map<const ProofNode*, Proof> memo;
  std::function<Proof(const Proof&)> rec = [&](const Proof& q) -> Proof {
    auto it = memo.find(q.get());
    if (it != memo.end()) return it->second;
    ProofNode n = *q;
    for (auto& c : n.premises) c = rec(c);
    for (auto& f : n.conclusion) f = apply_subst(f, s);
    if (n.rule == Rule::Exists) n.witness = apply_subst(n.witness, s);
    if (n.rule == Rule::Forall) {
      auto e = s.find(n.eigenvariable);
      if (e != s.end()) {
        if (!e->second.args.empty()) throw Error(ErrorKind::PreconditionViolated, "eigenvariable mapped to compound term");
        n.eigenvariable = e->second.head;
      }
    }
    auto r = std::make_shared<const ProofNode>(std::move(n));
    memo.emplace(q.get(), r);
    return r;
  };
  return rec(p);
}

inline void collect_formula_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Literal:
      out.insert(f.name());
      for (const auto& t : f.args()) collect_names(t, out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_formula_names(f.left(), out);
      collect_formula_names(f.right(), out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out.insert(f.name());
      collect_formula_names(f.body(), out);
      break;
    default: break;
  }
}

/// Every name used anywhere in the proof.
inline std::set<std::string> proof_names(const Proof& p) {
  std::set<std::string> out;
  std::unordered_map<const ProofNode*, bool> seen;
  std::function<void(const Proof&)> rec = [&](const Proof& q) {
    if (!seen.emplace(q.get(), true).second) return;
    for (const auto& f : q->conclusion) collect_formula_names(f, out);
    if (q->rule == Rule::Forall) out.insert(q->eigenvariable);
    if (q->rule == Rule::Exists) collect_names(q->witness, out);
    for (const auto& c : q->premises) rec(c);
  };
  rec(p);
  return out;
}

/// Term symbols (function symbols with arity, eigenvariables outside EVc included) of the proof.
inline std::map<std::string, std::size_t> term_signature(const Proof& p) {
  std::map<std::string, std::size_t> out;
  std::function<void(const Term&)> add = [&](const Term& t) {
    out.emplace(t.head, t.args.size());
    for (const auto& a : t.args) add(a);
  };
  std::function<void(const Formula&, std::set<std::string>)> addf = [&](const Formula& f, std::set<std::string> bound) {
    switch (f.kind()) {
      case FormulaKind::Literal:
        for (const auto& t : f.args()) {
          std::function<void(const Term&)> go = [&](const Term& u) {
            if (!(u.args.empty() && bound.count(u.head))) out.emplace(u.head, u.args.size());
            for (const auto& a : u.args) go(a);
          };
          go(t);
        }
        break;
      case FormulaKind::And:
      case FormulaKind::Or:
        addf(f.left(), bound);
        addf(f.right(), bound);
        break;
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        bound.insert(f.name());
        addf(f.body(), bound);
        break;
      default: break;
    }
  };
  for_each_node(p, [&](const Proof& q, const Locator&) {
    for (const auto& f : q->conclusion) addf(f, {});
    if (q->rule == Rule::Exists) add(q->witness);
  });
  return out;
}

/// Fresh-name supply: strips a trailing _<digits> and appends a counter.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> used = {}) : used_(std::move(used)) {}
  void reserve(const std::string& n) { used_.insert(n); }
  void reserve(const std::set<std::string>& ns) { used_.insert(ns.begin(), ns.end()); }
  std::string fresh(const std::string& base_name) {
    std::string base = base_name;
    auto us = base.rfind('_');
    if (us != std::string::npos && us + 1 < base.size() &&
        std::all_of(base.begin() + static_cast<long>(us) + 1, base.end(), [](char c) { return c >= '0' && c <= '9'; }))
      base = base.substr(0, us);
    for (;;) {
      std::string cand = base + "_" + std::to_string(++counter_);
      if (used_.insert(cand).second) return cand;
    }
  }
  std::size_t counter() const { return counter_; }

 private:
  std::set<std::string> used_;
  std::size_t counter_ = 0;
};

}  // namespace hcont
