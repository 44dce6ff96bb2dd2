#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcont/extraction.hpp"
#include "hcont/grammar.hpp"
#include "hcont/proof.hpp"
#include "hcont/proof_io.hpp"
#include "hcont/syntax.hpp"
#include "hcont/tautology.hpp"

namespace hcont {

/// One quantifier of an end-sequent formula; `j` counts quantifiers left to
/// right from 1.
struct QuantifierSlot {
  int j = 0;
  std::string var;
  bool existential = true;
  Locator path;                 // child indices from the formula root
  std::vector<int> dominators;  // slots in whose scope this one is, outermost first
};

inline std::vector<QuantifierSlot> quantifier_slots(const Formula& f) {
  std::vector<QuantifierSlot> out;
  std::vector<int> scope;
  Locator path;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    switch (g.kind()) {
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        QuantifierSlot s;
        s.j = static_cast<int>(out.size()) + 1;
        s.var = g.name();
        s.existential = g.kind() == FormulaKind::Exists;
        s.path = path;
        s.dominators = scope;
        out.push_back(s);
        scope.push_back(s.j);
        path.push_back(0);
        rec(g.body());
        path.pop_back();
        scope.pop_back();
        break;
      }
      case FormulaKind::And:
      case FormulaKind::Or:
        path.push_back(0);
        rec(g.left());
        path.back() = 1;
        rec(g.right());
        path.pop_back();
        break;
      default: break;
    }
  };
  rec(f);
  return out;
}

struct InstancePosition {
  int i = 0, j = 0, k = 0;
  friend bool operator==(const InstancePosition&, const InstancePosition&) = default;
  friend auto operator<=>(const InstancePosition&, const InstancePosition&) = default;
};

inline std::string to_string(const InstancePosition& p) {
  return "<" + std::to_string(p.i) + "," + std::to_string(p.j) + "," + std::to_string(p.k) + ">";
}

struct Instance {
  Formula formula;
  /// Term per quantifier slot; empty where the quantifier was weakened away.
  std::vector<std::optional<Term>> terms;
};

/// Instances of a sequent with their term tables t_{i,j,k}.
struct InstanceSet {
  std::vector<Formula> sequent;
  std::vector<std::vector<QuantifierSlot>> slots;
  std::vector<std::vector<Instance>> instances;

  explicit InstanceSet(std::vector<Formula> seq = {}) : sequent(std::move(seq)) {
    for (const auto& f : sequent) slots.push_back(quantifier_slots(f));
    instances.resize(sequent.size());
  }

  const QuantifierSlot& slot(int i, int j) const {
    return slots[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
  }
  const std::optional<Term>& term(const InstancePosition& p) const {
    return instances[static_cast<std::size_t>(p.i - 1)][static_cast<std::size_t>(p.k - 1)]
        .terms[static_cast<std::size_t>(p.j - 1)];
  }
  FormulaSet formulas() const {
    FormulaSet r;
    for (const auto& l : instances)
      for (const auto& in : l) r.insert(in.formula);
    return r;
  }
  std::vector<InstancePosition> positions(bool existential) const {
    std::vector<InstancePosition> out;
    for (std::size_t i = 0; i < instances.size(); ++i)
      for (std::size_t k = 0; k < instances[i].size(); ++k)
        for (const auto& s : slots[i])
          if (s.existential == existential && instances[i][k].terms[static_cast<std::size_t>(s.j - 1)])
            out.push_back({static_cast<int>(i + 1), s.j, static_cast<int>(k + 1)});
    return out;
  }
};

/// Instances induced by a proof: walks end-sequent ancestors, recording
/// witnesses of ex-inferences and eigenvariables of all-inferences.
inline InstanceSet instances_of(const Proof& p) {
  using Assign = std::map<std::string, Term>;
  using Entry = std::pair<Formula, Assign>;
  std::map<const ProofNode*, std::vector<std::vector<Entry>>> memo;
  std::function<const std::vector<std::vector<Entry>>&(const Proof&)> of =
      [&](const Proof& q) -> const std::vector<std::vector<Entry>>& {
    auto it = memo.find(q.get());
    if (it != memo.end()) return it->second;
    std::vector<std::vector<Entry>> out(q->conclusion.size());
    std::vector<const std::vector<std::vector<Entry>>*> prem;
    for (const auto& c : q->premises) prem.push_back(&of(c));
    auto aux = [&](std::size_t k) -> const std::vector<Entry>& {
      return (*prem[static_cast<std::size_t>(q->aux[k].premise)])[static_cast<std::size_t>(q->aux[k].index)];
    };
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& o = q->origin[i];
      if (o.premise >= 0) {
        out[i] = (*prem[static_cast<std::size_t>(o.premise)])[static_cast<std::size_t>(o.index)];
        continue;
      }
      const Formula& main = q->conclusion[i];
      switch (q->rule) {
        case Rule::Ax:
        case Rule::Top: out[i] = {{main, {}}}; break;
        case Rule::Weak: out[i] = {{Formula::bottom(), {}}}; break;
        case Rule::Cont:
          out[i] = aux(0);
          out[i].insert(out[i].end(), aux(1).begin(), aux(1).end());
          break;
        case Rule::Or:
        case Rule::And:
          for (const auto& [fa, ma] : aux(0))
            for (const auto& [fb, mb] : aux(1)) {
              Assign m = ma;
              m.insert(mb.begin(), mb.end());
              out[i].push_back({q->rule == Rule::Or ? Formula::disj(fa, fb) : Formula::conj(fa, fb), m});
            }
          break;
        case Rule::Exists:
          for (auto [f, m] : aux(0)) {
            m[main.name()] = q->witness;
            out[i].push_back({f, m});
          }
          break;
        case Rule::Forall:
          for (auto [f, m] : aux(0)) {
            m[main.name()] = Term(q->eigenvariable);
            out[i].push_back({f, m});
          }
          break;
        case Rule::Cut: break;
      }
    }
    return memo.emplace(q.get(), std::move(out)).first->second;
  };
  InstanceSet set(p->conclusion);
  const auto& root = of(p);
  for (std::size_t i = 0; i < root.size(); ++i)
    for (const auto& [f, m] : root[i]) {
      Instance in{f, {}};
      for (const auto& s : set.slots[i]) {
        auto it = m.find(s.var);
        in.terms.push_back(it == m.end() ? std::nullopt : std::optional<Term>(it->second));
      }
      set.instances[i].push_back(std::move(in));
    }
  return set;
}

namespace detail {

inline bool match_term(const Term& pat, const Term& t, const std::set<std::string>& vars,
                       std::map<std::string, Term>& b) {
  if (pat.args.empty() && vars.count(pat.head)) {
    auto [it, ok] = b.emplace(pat.head, t);
    return ok || it->second == t;
  }
  if (pat.head != t.head || pat.args.size() != t.args.size()) return false;
  for (std::size_t i = 0; i < pat.args.size(); ++i)
    if (!match_term(pat.args[i], t.args[i], vars, b)) return false;
  return true;
}

// Matches an instance against F with its quantifiers stripped; bot in the
// instance stands for any subformula.
inline bool match_instance(const Formula& f, const Formula& g, std::set<std::string>& vars,
                           std::map<std::string, Term>& b) {
  if (g.kind() == FormulaKind::Bottom) return true;
  switch (f.kind()) {
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      vars.insert(f.name());
      return match_instance(f.body(), g, vars, b);
    }
    case FormulaKind::And:
    case FormulaKind::Or:
      return g.kind() == f.kind() && match_instance(f.left(), g.left(), vars, b) &&
             match_instance(f.right(), g.right(), vars, b);
    case FormulaKind::Top: return g.kind() == FormulaKind::Top;
    case FormulaKind::Bottom: return false;
    case FormulaKind::Literal:
      return g.kind() == FormulaKind::Literal && g.name() == f.name() && g.positive() == f.positive() &&
             match_term(Term(f.name(), f.args()), Term(g.name(), g.args()), vars, b);
  }
  return false;
}

}  // namespace detail

/// Reads instance formulas against the sequent, in the given order; each goes
/// to the first formula it is an instance of.
inline InstanceSet match_instances(const std::vector<Formula>& sequent, const std::vector<Formula>& formulas) {
  InstanceSet set(sequent);
  for (const auto& g : formulas) {
    bool placed = false;
    for (std::size_t i = 0; i < sequent.size() && !placed; ++i) {
      std::set<std::string> vars;
      std::map<std::string, Term> b;
      if (!detail::match_instance(sequent[i], g, vars, b)) continue;
      Instance in{g, {}};
      bool ok = true;
      for (const auto& s : set.slots[i]) {
        auto it = b.find(s.var);
        if (it != b.end() && !s.existential && !it->second.args.empty()) ok = false;
        in.terms.push_back(it == b.end() ? std::nullopt : std::optional<Term>(it->second));
      }
      if (!ok) continue;
      set.instances[i].push_back(std::move(in));
      placed = true;
    }
    if (!placed) throw Error(ErrorKind::PreconditionViolated, to_string(g) + " is not an instance of the sequent");
  }
  return set;
}

inline InstanceSet match_instances(const std::vector<Formula>& sequent, const FormulaSet& formulas) {
  return match_instances(sequent, std::vector<Formula>(formulas.begin(), formulas.end()));
}

struct DependencyRelation {
  std::vector<InstancePosition> existential;
  std::set<std::pair<InstancePosition, InstancePosition>> prec;
  std::set<std::pair<InstancePosition, InstancePosition>> closure;
  bool acyclic() const {
    for (const auto& [a, b] : closure)
      if (a == b) return false;
    return true;
  }
};

/// E1 ≺ E2 when the term at E2 contains the variable of a universal
/// position dominated by E1; plus the transitive closure.
inline DependencyRelation dependency(const InstanceSet& set) {
  DependencyRelation d;
  d.existential = set.positions(true);
  for (const auto& u : set.positions(false)) {
    const Term& v = *set.term(u);
    if (!v.args.empty()) continue;
    for (const auto& e2 : d.existential) {
      if (!occurs(v.head, *set.term(e2))) continue;
      for (int dj : set.slot(u.i, u.j).dominators) {
        InstancePosition e1{u.i, dj, u.k};
        if (set.slot(u.i, dj).existential && set.term(e1)) d.prec.insert({e1, e2});
      }
    }
  }
  std::map<InstancePosition, std::set<InstancePosition>> succ;
  for (const auto& [a, b] : d.prec) succ[a].insert(b);
  for (const auto& e : d.existential) {
    std::set<InstancePosition> seen;
    std::vector<InstancePosition> todo(succ[e].begin(), succ[e].end());
    while (!todo.empty()) {
      auto c = todo.back();
      todo.pop_back();
      if (!seen.insert(c).second) continue;
      for (const auto& n : succ[c]) todo.push_back(n);
    }
    for (const auto& c : seen) d.closure.insert({e, c});
  }
  return d;
}

struct HerbrandCheck {
  bool acyclic = false;
  bool tautology = false;
  bool ok() const { return acyclic && tautology; }
  std::string reason() const {
    if (ok()) return "ok";
    if (!acyclic) return "dependency relation is cyclic";
    return "disjunction of instances is not a tautology";
  }
};

inline HerbrandCheck is_herbrand_disjunction(const InstanceSet& set) {
  HerbrandCheck c;
  c.acyclic = dependency(set).acyclic();
  c.tautology = is_tautology(set.formulas());
  return c;
}

inline HerbrandCheck is_herbrand_disjunction(const std::vector<Formula>& sequent, const FormulaSet& formulas) {
  return is_herbrand_disjunction(match_instances(sequent, formulas));
}

// ---------------------------------------------------------------------------
// Skolemization

struct SkolemSymbol {
  int i = 0, j = 0;
  std::string name;
  std::vector<int> arguments;  // existential slots feeding the symbol
};

/// Skolem symbols of a sequent, one per universal quantifier.
struct SkolemMap {
  std::vector<Formula> sequent;
  std::vector<SkolemSymbol> symbols;

  const SkolemSymbol* find(int i, int j) const {
    for (const auto& s : symbols)
      if (s.i == i && s.j == j) return &s;
    return nullptr;
  }
  const SkolemSymbol* find(const std::string& name) const {
    for (const auto& s : symbols)
      if (s.name == name) return &s;
    return nullptr;
  }
};

inline SkolemMap make_skolem_map(const std::vector<Formula>& sequent, std::set<std::string> used = {}) {
  for (const auto& f : sequent) collect_formula_names(f, used);
  SkolemMap m;
  m.sequent = sequent;
  for (std::size_t i = 0; i < sequent.size(); ++i) {
    auto slots = quantifier_slots(sequent[i]);
    for (const auto& s : slots) {
      if (s.existential) continue;
      SkolemSymbol sym;
      sym.i = static_cast<int>(i + 1);
      sym.j = s.j;
      for (int d : s.dominators)
        if (slots[static_cast<std::size_t>(d - 1)].existential) sym.arguments.push_back(d);
      std::string base = (sym.arguments.empty() ? "c_" : "f_") + std::to_string(sym.i) + "_" + std::to_string(sym.j);
      std::string name = base;
      while (used.count(name)) name += "'";
      used.insert(name);
      sym.name = name;
      m.symbols.push_back(sym);
    }
  }
  return m;
}

namespace detail {

// Skolemizes the subformula of F_i at `path`; `assign` maps variables bound
// above it (and already instantiated) to terms.
inline Formula skolemize_sub(const SkolemMap& m, int i, const Formula& f, Locator& path,
                             std::map<std::string, Term> assign, const std::vector<QuantifierSlot>& slots) {
  switch (f.kind()) {
    case FormulaKind::Forall: {
      const QuantifierSlot* s = nullptr;
      for (const auto& q : slots)
        if (q.path == path) s = &q;
      const SkolemSymbol* sym = m.find(i, s->j);
      std::vector<Term> args;
      for (int d : sym->arguments) {
        const auto& var = slots[static_cast<std::size_t>(d - 1)].var;
        auto it = assign.find(var);
        args.push_back(it == assign.end() ? Term(var) : it->second);
      }
      assign[f.name()] = Term(sym->name, args);
      path.push_back(0);
      Formula r = skolemize_sub(m, i, f.body(), path, assign, slots);
      path.pop_back();
      return r;
    }
    case FormulaKind::Exists: {
      assign.erase(f.name());
      path.push_back(0);
      Formula r = Formula::exists(f.name(), skolemize_sub(m, i, f.body(), path, assign, slots));
      path.pop_back();
      return r;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      path.push_back(0);
      Formula l = skolemize_sub(m, i, f.left(), path, assign, slots);
      path.back() = 1;
      Formula r = skolemize_sub(m, i, f.right(), path, assign, slots);
      path.pop_back();
      return f.kind() == FormulaKind::And ? Formula::conj(l, r) : Formula::disj(l, r);
    }
    case FormulaKind::Literal: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(apply_subst(a, assign));
      return Formula::literal(f.name(), args, f.positive());
    }
    default: return f;
  }
}

inline const Formula& formula_at(const Formula& f, const Locator& path) {
  const Formula* cur = &f;
  for (int c : path) {
    if (cur->is_quantifier()) cur = &cur->body();
    else cur = c == 0 ? &cur->left() : &cur->right();
  }
  return *cur;
}

}  // namespace detail

inline std::vector<Formula> skolemize_sequent(const SkolemMap& m) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < m.sequent.size(); ++i) {
    Locator path;
    out.push_back(detail::skolemize_sub(m, static_cast<int>(i + 1), m.sequent[i], path, {},
                                        quantifier_slots(m.sequent[i])));
  }
  return out;
}

inline std::pair<std::vector<Formula>, SkolemMap> skolemize_sequent(const std::vector<Formula>& sequent) {
  SkolemMap m = make_skolem_map(sequent);
  return {skolemize_sequent(m), m};
}

struct SkolemizedProof {
  Proof proof;
  SkolemMap map;
  /// Eigenvariables of removed all-inferences and their Skolem terms.
  Substitution sigma;
};

/// Removes every all-inference on an end-sequent ancestor, replacing its
/// eigenvariable by the Skolem term determined from below. Cut formulas keep
/// their quantifiers.
inline SkolemizedProof skolemize_proof(const Proof& p) {
  SkolemizedProof out;
  out.map = make_skolem_map(p->conclusion, proof_names(p));
  std::vector<std::vector<QuantifierSlot>> slots;
  for (const auto& f : p->conclusion) slots.push_back(quantifier_slots(f));

  struct Tag {
    int i;
    Locator path;
    std::map<std::string, Term> assign;
  };
  using Tags = std::vector<std::optional<Tag>>;
  Substitution& sigma = out.sigma;

  auto sk_formula = [&](const Formula& orig, const std::optional<Tag>& t) {
    if (!t) return apply_subst(orig, sigma);
    const auto& sl = slots[static_cast<std::size_t>(t->i - 1)];
    const Formula& sub = detail::formula_at(p->conclusion[static_cast<std::size_t>(t->i - 1)], t->path);
    Locator path = t->path;
    return detail::skolemize_sub(out.map, t->i, sub, path, t->assign, sl);
  };

  std::function<Proof(const Proof&, const Tags&)> rec = [&](const Proof& q, const Tags& tags) -> Proof {
    const auto& n = *q;
    std::vector<Tags> pt(n.premises.size());
    for (std::size_t k = 0; k < n.premises.size(); ++k) pt[k].resize(n.premises[k]->conclusion.size());
    int mi = n.main_index();
    std::optional<Tag> main_tag = (mi >= 0) ? tags[static_cast<std::size_t>(mi)] : std::nullopt;
    for (std::size_t c = 0; c < n.origin.size(); ++c)
      if (n.origin[c].premise >= 0)
        pt[static_cast<std::size_t>(n.origin[c].premise)][static_cast<std::size_t>(n.origin[c].index)] = tags[c];
    bool void_forall = false;
    if (main_tag && n.rule != Rule::Ax && n.rule != Rule::Top && n.rule != Rule::Weak) {
      const Formula& mf = detail::formula_at(p->conclusion[static_cast<std::size_t>(main_tag->i - 1)], main_tag->path);
      auto set_aux = [&](std::size_t a, Tag t) {
        pt[static_cast<std::size_t>(n.aux[a].premise)][static_cast<std::size_t>(n.aux[a].index)] = std::move(t);
      };
      switch (n.rule) {
        case Rule::Cont:
          set_aux(0, *main_tag);
          set_aux(1, *main_tag);
          break;
        case Rule::Or:
        case Rule::And:
          for (int s = 0; s < 2; ++s) {
            Tag t = *main_tag;
            t.path.push_back(s);
            set_aux(static_cast<std::size_t>(s), t);
          }
          break;
        case Rule::Exists: {
          Tag t = *main_tag;
          t.path.push_back(0);
          t.assign[mf.name()] = apply_subst(n.witness, sigma);
          set_aux(0, t);
          break;
        }
        case Rule::Forall: {
          Tag t = *main_tag;
          const auto& sl = slots[static_cast<std::size_t>(t.i - 1)];
          const QuantifierSlot* s = nullptr;
          for (const auto& x : sl)
            if (x.path == t.path) s = &x;
          const SkolemSymbol* sym = out.map.find(t.i, s->j);
          std::vector<Term> args;
          for (int d : sym->arguments) {
            const auto& var = sl[static_cast<std::size_t>(d - 1)].var;
            auto it = t.assign.find(var);
            args.push_back(it == t.assign.end() ? Term(var) : it->second);
          }
          Term sk(sym->name, args);
          t.assign[mf.name()] = sk;
          t.path.push_back(0);
          sigma[n.eigenvariable] = sk;
          set_aux(0, t);
          void_forall = true;
          break;
        }
        default: break;
      }
    }
    std::vector<Proof> prem;
    for (std::size_t k = 0; k < n.premises.size(); ++k) prem.push_back(rec(n.premises[k], pt[k]));
    std::vector<Formula> expect;
    for (std::size_t c = 0; c < n.conclusion.size(); ++c) expect.push_back(sk_formula(n.conclusion[c], tags[c]));
    if (void_forall) {
      std::vector<int> order;
      for (const auto& o : n.origin) order.push_back(o.premise >= 0 ? o.index : n.aux[0].index);
      Proof r = permute(prem[0], order);
      if (r->conclusion != expect) throw Error(ErrorKind::NotWellFormed, "Skolemization of a void inference failed");
      return r;
    }
    Proof r;
    const Formula main = mi >= 0 ? expect[static_cast<std::size_t>(mi)] : Formula::top();
    switch (n.rule) {
      case Rule::Ax: r = make_ax(expect[static_cast<std::size_t>(n.origin[0].index == 0 ? 0 : 1)]); break;
      case Rule::Top: r = make_top(); break;
      case Rule::Weak: r = make_weak(prem[0], main); break;
      case Rule::Cont: r = make_cont(prem[0], n.aux[0].index, n.aux[1].index); break;
      case Rule::Or: r = make_or(prem[0], n.aux[0].index, n.aux[1].index); break;
      case Rule::Cut: r = make_cut(prem[0], prem[1], n.aux[0].index, n.aux[1].index); break;
      case Rule::And: r = make_and(prem[0], prem[1], n.aux[0].index, n.aux[1].index); break;
      case Rule::Forall: r = make_all(prem[0], n.aux[0].index, n.eigenvariable, main); break;
      case Rule::Exists: r = make_ex(prem[0], n.aux[0].index, apply_subst(n.witness, sigma), main); break;
    }
    if (n.rule != Rule::Ax) r = permute(r, detail::order_relative_to_default(n));
    else if (n.origin[0].index != 0) r = permute(r, {1, 0});
    if (r->conclusion != expect) throw Error(ErrorKind::NotWellFormed, "Skolemization produced a different sequent");
    return r;
  };
  Tags root;
  for (std::size_t i = 0; i < p->conclusion.size(); ++i) root.push_back(Tag{static_cast<int>(i + 1), {}, {}});
  out.proof = rec(p, root);
  return out;
}

namespace detail {

// Resolves universal-position variables to terms built by `build(sym-or-slot,
// resolved dominating terms)`, dominating terms resolved first.
template <class Build>
inline std::map<std::string, Term> resolve_universals(const InstanceSet& set, Build build, ErrorKind conflict) {
  std::map<std::string, InstancePosition> first;
  std::map<std::string, Term> done;
  std::set<std::string> active;
  auto positions = set.positions(false);
  std::map<std::string, std::vector<InstancePosition>> by_var;
  for (const auto& u : positions) {
    const Term& v = *set.term(u);
    if (!v.args.empty())
      throw Error(ErrorKind::PreconditionViolated, "universal position " + to_string(u) + " holds a compound term");
    by_var[v.head].push_back(u);
  }
  std::function<Term(const Term&)> subst;
  std::function<Term(const std::string&)> resolve = [&](const std::string& v) -> Term {
    if (auto it = done.find(v); it != done.end()) return it->second;
    if (!active.insert(v).second) throw Error(ErrorKind::PreconditionViolated, "cyclic dependency through " + v);
    std::optional<Term> result;
    for (const auto& u : by_var.at(v)) {
      std::vector<Term> args;
      for (int d : set.slot(u.i, u.j).dominators) {
        if (!set.slot(u.i, d).existential) continue;
        const auto& t = set.term({u.i, d, u.k});
        if (!t) throw Error(ErrorKind::PreconditionViolated, "dominating position of " + to_string(u) + " is unassigned");
        args.push_back(subst(*t));
      }
      Term r = build(u, args);
      if (result && *result != r)
        throw Error(conflict, "variable " + v + " gets both " + to_string(*result) + " and " + to_string(r));
      result = r;
    }
    active.erase(v);
    done.emplace(v, *result);
    return *result;
  };
  subst = [&](const Term& t) -> Term {
    if (t.args.empty() && by_var.count(t.head)) return resolve(t.head);
    Term r(t.head);
    for (const auto& a : t.args) r.args.push_back(subst(a));
    return r;
  };
  for (const auto& [v, ps] : by_var) resolve(v);
  return done;
}

inline Formula map_terms(const Formula& f, const std::function<Term(const Term&)>& g) {
  switch (f.kind()) {
    case FormulaKind::Literal: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(g(a));
      return Formula::literal(f.name(), args, f.positive());
    }
    case FormulaKind::And: return Formula::conj(map_terms(f.left(), g), map_terms(f.right(), g));
    case FormulaKind::Or: return Formula::disj(map_terms(f.left(), g), map_terms(f.right(), g));
    case FormulaKind::Exists: return Formula::exists(f.name(), map_terms(f.body(), g));
    case FormulaKind::Forall: return Formula::forall(f.name(), map_terms(f.body(), g));
    default: return f;
  }
}

}  // namespace detail

/// Replaces each universal-position variable by its Skolem term; equal
/// results collapse.
inline FormulaSet skolemize_instances(const InstanceSet& set, const SkolemMap& m) {
  auto sub = detail::resolve_universals(
      set,
      [&](const InstancePosition& u, const std::vector<Term>& args) {
        const SkolemSymbol* s = m.find(u.i, u.j);
        if (!s) throw Error(ErrorKind::PreconditionViolated, "no Skolem symbol for " + to_string(u));
        return Term(s->name, args);
      },
      ErrorKind::PreconditionViolated);
  FormulaSet out;
  for (const auto& f : set.formulas()) out.insert(apply_subst(f, sub));
  return out;
}

inline FormulaSet skolemize_instances(const InstanceSet& set) {
  return skolemize_instances(set, make_skolem_map(set.sequent));
}

/// As above for plain formulas; every name in `eigenvariables` occurring in
/// them must sit at some universal position.
inline FormulaSet skolemize_instances(const std::vector<Formula>& sequent, const FormulaSet& formulas,
                                      const std::set<std::string>& eigenvariables, const SkolemMap& m) {
  InstanceSet set = match_instances(sequent, formulas);
  std::set<std::string> at_positions;
  for (const auto& u : set.positions(false)) at_positions.insert(set.term(u)->head);
  for (const auto& f : formulas) {
    std::set<std::string> names;
    collect_formula_names(f, names);
    for (const auto& n : names)
      if (eigenvariables.count(n) && !at_positions.count(n))
        throw Error(ErrorKind::UnknownVariable, "eigenvariable " + n + " has no universal position");
  }
  return skolemize_instances(set, m);
}

/// Canonical variable name a_i_j__t1__...__tm.
inline std::string canonical_name(int i, int j, const std::vector<Term>& dominating) {
  std::string s = "a_" + std::to_string(i) + "_" + std::to_string(j);
  for (const auto& t : dominating) s += "__" + to_string(t);
  return s;
}

inline Term deskolemize_term(const Term& t, const SkolemMap& m) {
  if (const SkolemSymbol* s = m.find(t.head)) {
    if (t.args.size() != s->arguments.size())
      throw Error(ErrorKind::ArityMismatch, "Skolem symbol " + t.head + " expects " +
                                                std::to_string(s->arguments.size()) + " arguments, got " +
                                                std::to_string(t.args.size()));
    std::vector<Term> inner;
    for (const auto& a : t.args) inner.push_back(deskolemize_term(a, m));
    return Term(canonical_name(s->i, s->j, inner));
  }
  Term r(t.head);
  for (const auto& a : t.args) r.args.push_back(deskolemize_term(a, m));
  return r;
}

/// Maximal Skolem terms become canonically named variables; names carry the
/// deskolemized arguments.
inline FormulaSet deskolemize_instances(const FormulaSet& fs, const SkolemMap& m) {
  FormulaSet out;
  for (const auto& f : fs) out.insert(detail::map_terms(f, [&](const Term& t) { return deskolemize_term(t, m); }));
  return out;
}

/// Renames every universal-position variable to its canonical name. Fails
/// only when one variable would receive two different names.
inline FormulaSet canonical_rename(const InstanceSet& set) {
  auto sub = detail::resolve_universals(
      set,
      [&](const InstancePosition& u, const std::vector<Term>& args) { return Term(canonical_name(u.i, u.j, args)); },
      ErrorKind::NonCanonicalizable);
  FormulaSet out;
  for (const auto& f : set.formulas()) out.insert(apply_subst(f, sub));
  return out;
}

inline FormulaSet canonical_rename(const std::vector<Formula>& sequent, const FormulaSet& formulas) {
  return canonical_rename(match_instances(sequent, formulas));
}

/// H(π): the grammar language of the Skolemized proof, deskolemized.
inline FormulaSet herbrand_content(const Proof& p, std::size_t cap = default_language_cap) {
  auto sk = skolemize_proof(p);
  return deskolemize_instances(grammar_language(sk.proof, cap), sk.map);
}

/// Eigenvariables of cuts whose existential side is introduced by weakening.
inline std::set<std::string> dead_cut_eigenvariables(const Proof& p) {
  std::set<std::string> out;
  for_each_node(p, [&](const Proof& q, const Locator&) {
    if (q->rule != Rule::Cut) return;
    int u = universal_side(*q);
    if (u < 0) return;
    const auto& e = q->premises[static_cast<std::size_t>(1 - u)];
    if (e->rule == Rule::Weak && e->is_main(static_cast<std::size_t>(q->aux[static_cast<std::size_t>(1 - u)].index)))
      out.insert(q->premises[static_cast<std::size_t>(u)]->eigenvariable);
  });
  return out;
}

/// Hseq of a normal form under canonical names: Skolemize, drop instances
/// mentioning eigenvariables of dead cuts, deskolemize.
inline FormulaSet normal_form_content(const Proof& nf) {
  auto sk = skolemize_proof(nf);
  auto dead = dead_cut_eigenvariables(sk.proof);
  FormulaSet kept;
  for (const auto& f : herbrand_set(sk.proof)) {
    std::set<std::string> names;
    collect_formula_names(f, names);
    bool bad = false;
    for (const auto& d : dead)
      if (names.count(d)) bad = true;
    if (!bad) kept.insert(f);
  }
  return deskolemize_instances(kept, sk.map);
}

inline nlohmann::json skolem_map_to_json(const SkolemMap& m) {
  nlohmann::json syms = nlohmann::json::array();
  for (const auto& s : m.symbols) syms.push_back({{"i", s.i}, {"j", s.j}, {"symbol", s.name}, {"arguments", s.arguments}});
  return {{"sequent", sequent_strings(m.sequent)}, {"symbols", syms}};
}

inline SkolemMap skolem_map_from_json(const nlohmann::json& j) {
  SkolemMap m;
  for (const auto& f : j.at("sequent")) m.sequent.push_back(parse_formula(f.get<std::string>()));
  for (const auto& s : j.at("symbols"))
    m.symbols.push_back({s.at("i").get<int>(), s.at("j").get<int>(), s.at("symbol").get<std::string>(),
                         s.at("arguments").get<std::vector<int>>()});
  return m;
}

inline nlohmann::json formulas_to_json(const FormulaSet& fs) { return sorted_strings(fs); }

inline FormulaSet formulas_from_json(const nlohmann::json& j) {
  FormulaSet r;
  for (const auto& s : j) r.insert(parse_formula(s.get<std::string>()));
  return r;
}

}  // namespace hcont
