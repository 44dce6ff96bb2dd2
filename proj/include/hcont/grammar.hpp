#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hcont/proof.hpp"
#include "hcont/term.hpp"

namespace hcont {

struct Production {
  std::string lhs;
  Term rhs;
  std::vector<Locator> sources;
};

/// A tree grammar; non-terminals occur in right-hand sides as nullary terms.
/// Productions are kept as a set: adding one twice only merges its sources.
class Grammar {
 public:
  Grammar() = default;
  explicit Grammar(std::string start) : start_(std::move(start)) { nonterminals_.insert(start_); }

  const std::string& start() const { return start_; }
  const std::set<std::string>& nonterminals() const { return nonterminals_; }
  const std::set<std::string>& rigid() const { return rigid_; }
  const std::vector<Production>& productions() const { return productions_; }

  void set_start(const std::string& s) {
    start_ = s;
    nonterminals_.insert(s);
  }
  void add_nonterminal(const std::string& n, bool is_rigid) {
    nonterminals_.insert(n);
    if (is_rigid) rigid_.insert(n);
  }
  std::size_t add_production(const std::string& lhs, const Term& rhs, std::vector<Locator> sources = {}) {
    nonterminals_.insert(lhs);
    for (std::size_t i = 0; i < productions_.size(); ++i)
      if (productions_[i].lhs == lhs && productions_[i].rhs == rhs) {
        for (auto& s : sources)
          if (std::find(productions_[i].sources.begin(), productions_[i].sources.end(), s) ==
              productions_[i].sources.end())
            productions_[i].sources.push_back(std::move(s));
        return i;
      }
    productions_.push_back({lhs, rhs, std::move(sources)});
    return productions_.size() - 1;
  }

  bool is_nonterminal(const std::string& n) const { return nonterminals_.count(n) > 0; }
  bool totally_rigid() const { return rigid_ == nonterminals_; }

  std::vector<std::size_t> productions_of(const std::string& n) const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < productions_.size(); ++i)
      if (productions_[i].lhs == n) r.push_back(i);
    return r;
  }

  /// Non-terminals occurring in `t`.
  std::set<std::string> nonterminals_in(const Term& t) const {
    std::set<std::string> out;
    std::function<void(const Term&)> rec = [&](const Term& s) {
      if (s.args.empty() && is_nonterminal(s.head)) out.insert(s.head);
      for (const auto& a : s.args) rec(a);
    };
    rec(t);
    return out;
  }
  bool is_ground(const Term& t) const { return nonterminals_in(t).empty(); }

  /// Terminal symbols with their arities. Throws when a symbol is used with
  /// two arities or a non-terminal is applied to arguments.
  std::map<std::string, std::size_t> alphabet() const {
    std::map<std::string, std::size_t> sig;
    std::function<void(const Term&)> rec = [&](const Term& s) {
      if (is_nonterminal(s.head)) {
        if (!s.args.empty())
          throw Error(ErrorKind::NotWellFormed, "non-terminal " + s.head + " used as a function symbol");
      } else {
        auto [it, ok] = sig.emplace(s.head, s.args.size());
        if (!ok && it->second != s.args.size())
          throw Error(ErrorKind::NotWellFormed, "symbol " + s.head + " used with two arities");
      }
      for (const auto& a : s.args) rec(a);
    };
    for (const auto& p : productions_) rec(p.rhs);
    return sig;
  }

  void validate() const {
    if (!is_nonterminal(start_)) throw Error(ErrorKind::NotWellFormed, "start symbol is not a non-terminal");
    for (const auto& r : rigid_)
      if (!is_nonterminal(r)) throw Error(ErrorKind::NotWellFormed, "rigid symbol " + r + " is not a non-terminal");
    (void)alphabet();
  }

  friend bool operator==(const Grammar& a, const Grammar& b) {
    if (a.start_ != b.start_ || a.nonterminals_ != b.nonterminals_ || a.rigid_ != b.rigid_) return false;
    return a.production_set() == b.production_set();
  }

  std::set<std::pair<std::string, Term>> production_set() const {
    std::set<std::pair<std::string, Term>> s;
    for (const auto& p : productions_) s.emplace(p.lhs, p.rhs);
    return s;
  }

 private:
  std::string start_;
  std::set<std::string> nonterminals_;
  std::set<std::string> rigid_;
  std::vector<Production> productions_;
};

using Language = std::set<Term>;

constexpr std::size_t default_language_cap = 1000000;

struct Reachability {
  std::map<std::string, std::set<std::string>> step;
  std::map<std::string, std::set<std::string>> plus;
  std::map<std::string, std::set<std::string>> star;
};

inline Reachability reachability(const Grammar& g) {
  Reachability r;
  for (const auto& n : g.nonterminals()) {
    r.step[n];
    r.plus[n];
    r.star[n] = {n};
  }
  for (const auto& p : g.productions())
    for (const auto& b : g.nonterminals_in(p.rhs)) r.step[p.lhs].insert(b);
  for (const auto& n : g.nonterminals()) {
    std::vector<std::string> todo(r.step[n].begin(), r.step[n].end());
    auto& seen = r.plus[n];
    while (!todo.empty()) {
      std::string c = todo.back();
      todo.pop_back();
      if (!seen.insert(c).second) continue;
      for (const auto& d : r.step[c]) todo.push_back(d);
    }
    r.star[n].insert(seen.begin(), seen.end());
  }
  return r;
}

inline bool is_acyclic(const Grammar& g) {
  auto r = reachability(g);
  for (const auto& [n, s] : r.plus)
    if (s.count(n)) return false;
  return true;
}

/// Order with a before b whenever a reaches b: reversed depth-first
/// post-order, successors and roots visited by name.
inline std::vector<std::string> topological_order(const Grammar& g) {
  if (!is_acyclic(g)) throw Error(ErrorKind::NotAcyclic, "grammar is cyclic");
  auto r = reachability(g);
  std::vector<std::string> post;
  std::set<std::string> seen;
  std::function<void(const std::string&)> dfs = [&](const std::string& n) {
    if (!seen.insert(n).second) return;
    for (const auto& m : r.step[n]) dfs(m);
    post.push_back(n);
  };
  for (const auto& n : g.nonterminals()) dfs(n);
  std::reverse(post.begin(), post.end());
  return post;
}

/// Language of a totally rigid acyclic grammar: the start symbol with one
/// production substituted for every non-terminal, in topological order.
/// Terms containing a non-terminal without productions are dropped.
inline Language compute_language(const Grammar& g, std::size_t cap = default_language_cap) {
  if (!g.totally_rigid()) throw Error(ErrorKind::NotTotallyRigid, "grammar is not totally rigid");
  auto order = topological_order(g);
  Language cur{Term(g.start())};
  for (const auto& a : order) {
    auto prods = g.productions_of(a);
    Language next;
    for (const auto& s : cur) {
      if (!occurs(a, s)) {
        next.insert(s);
        continue;
      }
      for (auto i : prods) {
        next.insert(apply_subst(s, {{a, g.productions()[i].rhs}}));
        if (next.size() > cap) throw Error(ErrorKind::SizeCap, "language exceeds " + std::to_string(cap) + " terms");
      }
    }
    cur = std::move(next);
  }
  return cur;
}

/// Language of the underlying regular grammar: independent choices at every
/// non-terminal occurrence.
inline Language compute_regular_language(const Grammar& g, std::size_t cap = default_language_cap) {
  if (!is_acyclic(g)) throw Error(ErrorKind::NotAcyclic, "grammar is cyclic");
  std::map<std::string, Language> memo;
  std::function<Language(const Term&)> expand;
  std::function<const Language&(const std::string&)> of = [&](const std::string& n) -> const Language& {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Language l;
    for (auto i : g.productions_of(n)) {
      for (auto& t : expand(g.productions()[i].rhs)) l.insert(t);
      if (l.size() > cap) throw Error(ErrorKind::SizeCap, "language exceeds " + std::to_string(cap) + " terms");
    }
    return memo.emplace(n, std::move(l)).first->second;
  };
  expand = [&](const Term& t) -> Language {
    if (t.args.empty() && g.is_nonterminal(t.head)) return of(t.head);
    std::vector<Language> parts;
    std::size_t projected = 1;
    for (const auto& a : t.args) {
      parts.push_back(expand(a));
      std::size_t n = parts.back().size();
      if (n != 0 && projected > cap / n) throw Error(ErrorKind::SizeCap, "language exceeds " + std::to_string(cap) + " terms");
      projected *= n;
    }
    Language out;
    if (projected == 0) return out;
    std::vector<Term> args(t.args.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == parts.size()) {
        out.insert(Term(t.head, args));
        return;
      }
      for (const auto& c : parts[i]) {
        args[i] = c;
        rec(i + 1);
      }
    };
    rec(0);
    return out;
  };
  return of(g.start());
}

struct DerivationStep {
  Position position;
  std::size_t production = 0;
  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

using Derivation = std::vector<DerivationStep>;

struct DerivationRun {
  std::vector<Term> terms;
  /// β-positions: positions where β occurs in some intermediate term.
  std::map<std::string, std::set<Position>> positions;
};

inline DerivationRun run_derivation(const Grammar& g, const Derivation& d) {
  DerivationRun run;
  run.terms.push_back(Term(g.start()));
  run.positions[g.start()].insert({});
  for (std::size_t k = 0; k < d.size(); ++k) {
    const auto& st = d[k];
    if (st.production >= g.productions().size())
      throw Error(ErrorKind::PreconditionViolated, "step " + std::to_string(k + 1) + ": no such production");
    const auto& p = g.productions()[st.production];
    const Term& cur = run.terms.back();
    const Term& at = subterm_at(cur, st.position);
    if (!at.args.empty() || at.head != p.lhs)
      throw Error(ErrorKind::PreconditionViolated,
                  "step " + std::to_string(k + 1) + ": position does not hold " + p.lhs);
    Term next = replace_at(cur, st.position, p.rhs);
    std::function<void(const Term&, Position&)> mark = [&](const Term& s, Position& pos) {
      if (s.args.empty() && g.is_nonterminal(s.head)) run.positions[s.head].insert(pos);
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        pos.push_back(static_cast<int>(i + 1));
        mark(s.args[i], pos);
        pos.pop_back();
      }
    };
    Position pos = st.position;
    mark(p.rhs, pos);
    run.terms.push_back(std::move(next));
  }
  return run;
}

inline Term derive(const Grammar& g, const Derivation& d) { return run_derivation(g, d).terms.back(); }

struct RigidityViolation {
  std::string nonterminal;
  Position p;
  Position q;
};

/// First violation in (non-terminal, p, q) order, p < q.
inline std::optional<RigidityViolation> check_rigidity(const Grammar& g, const Derivation& d) {
  auto run = run_derivation(g, d);
  const Term& t = run.terms.back();
  if (!g.is_ground(t)) throw Error(ErrorKind::PreconditionViolated, "derivation does not end in a ground term");
  for (const auto& [n, ps] : run.positions) {
    if (!g.rigid().count(n)) continue;
    for (auto i = ps.begin(); i != ps.end(); ++i)
      for (auto j = std::next(i); j != ps.end(); ++j)
        if (subterm_at(t, *i) != subterm_at(t, *j)) return RigidityViolation{n, *i, *j};
  }
  return std::nullopt;
}

struct ViolationCounts {
  std::map<std::string, std::size_t> per_nonterminal;
  std::size_t total = 0;
};

/// Ordered pairs of distinct β-positions carrying different subterms of the
/// derived term, for every non-terminal β.
inline ViolationCounts count_rigidity_violations(const Grammar& g, const Derivation& d) {
  auto run = run_derivation(g, d);
  const Term& t = run.terms.back();
  ViolationCounts c;
  for (const auto& n : g.nonterminals()) c.per_nonterminal[n] = 0;
  for (const auto& [n, ps] : run.positions) {
    std::size_t k = 0;
    for (const auto& p : ps)
      for (const auto& q : ps)
        if (p != q && subterm_at(t, p) != subterm_at(t, q)) ++k;
    c.per_nonterminal[n] = k;
    c.total += k;
  }
  return c;
}

/// Rebuilds a rigid derivation so that every rigid non-terminal is expanded
/// like its first expansion in `d`. Steps come out in pre-order.
inline Derivation normalize_derivation(const Grammar& g, const Derivation& d) {
  run_derivation(g, d);
  // a position is expanded repeatedly when a right-hand side is a bare non-terminal
  using Node = std::pair<Position, std::size_t>;
  std::map<Node, std::size_t> tree;
  std::map<Position, std::size_t> visits;
  std::map<std::string, Node> first;
  for (const auto& st : d) {
    Node n{st.position, visits[st.position]++};
    tree[n] = st.production;
    const auto& lhs = g.productions()[st.production].lhs;
    if (g.rigid().count(lhs)) first.emplace(lhs, n);
  }
  Derivation out;
  std::function<void(const Position&, const Node&, std::size_t)> expand = [&](const Position& at, const Node& orig,
                                                                              std::size_t depth) {
    auto it = tree.find(orig);
    if (it == tree.end()) return;
    if (depth > tree.size()) throw Error(ErrorKind::PreconditionViolated, "derivation is not rigid");
    out.push_back({at, it->second});
    const Term& rhs = g.productions()[it->second].rhs;
    std::function<void(const Term&, Position&)> walk = [&](const Term& s, Position& rel) {
      if (s.args.empty() && g.is_nonterminal(s.head)) {
        Position na = at;
        na.insert(na.end(), rel.begin(), rel.end());
        Node no = orig;
        if (rel.empty()) {
          ++no.second;
        } else {
          no.first.insert(no.first.end(), rel.begin(), rel.end());
          no.second = 0;
        }
        auto f = first.find(s.head);
        expand(na, f != first.end() ? f->second : no, depth + 1);
        return;
      }
      for (std::size_t i = 0; i < s.args.size(); ++i) {
        rel.push_back(static_cast<int>(i + 1));
        walk(s.args[i], rel);
        rel.pop_back();
      }
    };
    Position rel;
    walk(rhs, rel);
  };
  auto f = first.find(g.start());
  expand({}, f != first.end() ? f->second : Node{Position{}, 0}, 0);
  return out;
}

/// Substitutes the only production of `b` into all other productions and
/// drops `b`.
inline Grammar eliminate_nonterminal(const Grammar& g, const std::string& b) {
  if (!g.totally_rigid()) throw Error(ErrorKind::NotTotallyRigid, "grammar is not totally rigid");
  if (b == g.start()) throw Error(ErrorKind::PreconditionViolated, "cannot eliminate the start symbol");
  auto ps = g.productions_of(b);
  if (ps.size() != 1)
    throw Error(ErrorKind::PreconditionViolated,
                b + " has " + std::to_string(ps.size()) + " productions, expected exactly one");
  const Term t = g.productions()[ps[0]].rhs;
  Grammar r(g.start());
  for (const auto& n : g.nonterminals())
    if (n != b) r.add_nonterminal(n, g.rigid().count(n) > 0);
  for (std::size_t i = 0; i < g.productions().size(); ++i) {
    if (i == ps[0]) continue;
    const auto& p = g.productions()[i];
    r.add_production(p.lhs, apply_subst(p.rhs, {{b, t}}), p.sources);
  }
  return r;
}

inline Grammar eliminate_nonterminal(const Grammar& g, const std::string& b, const Term& t) {
  auto ps = g.productions_of(b);
  if (ps.size() != 1 || g.productions()[ps[0]].rhs != t)
    throw Error(ErrorKind::PreconditionViolated, b + " -> " + to_string(t) + " is not its only production");
  return eliminate_nonterminal(g, b);
}

/// Applies s to every right side; non-terminals are left alone by s's domain.
inline Grammar substitute_grammar(const Grammar& g, const Substitution& s) {
  Grammar r(g.start());
  for (const auto& n : g.nonterminals()) r.add_nonterminal(n, g.rigid().count(n) > 0);
  for (const auto& p : g.productions()) r.add_production(p.lhs, apply_subst(p.rhs, s), p.sources);
  return r;
}

/// Same grammar with every non-terminal non-rigid.
inline Grammar derigidify(const Grammar& g) {
  Grammar r(g.start());
  for (const auto& n : g.nonterminals()) r.add_nonterminal(n, false);
  for (const auto& p : g.productions()) r.add_production(p.lhs, p.rhs, p.sources);
  return r;
}

/// A path: production indices, each left side occurring in the previous
/// right side.
using GrammarPath = std::vector<std::size_t>;

struct PathTarget {
  std::optional<std::string> nonterminal;
  std::optional<Term> term;
};

inline std::vector<GrammarPath> find_paths(const Grammar& g, const std::string& from, const PathTarget& to = {}) {
  if (!is_acyclic(g)) throw Error(ErrorKind::NotAcyclic, "grammar is cyclic");
  std::vector<GrammarPath> out;
  GrammarPath cur;
  std::function<void(const std::string&)> rec = [&](const std::string& a) {
    for (auto i : g.productions_of(a)) {
      cur.push_back(i);
      const auto& p = g.productions()[i];
      bool hit = (!to.nonterminal || p.lhs == *to.nonterminal) && (!to.term || p.rhs == *to.term);
      if (hit) out.push_back(cur);
      for (const auto& b : g.nonterminals_in(p.rhs)) rec(b);
      cur.pop_back();
    }
  };
  rec(from);
  return out;
}

}  // namespace hcont
