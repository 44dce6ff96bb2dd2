#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hcont/formula.hpp"

namespace hcont {

namespace detail {

// Compiled propositional structure: atoms are ground literals without sign.
struct PropNode {
  enum Kind { Atom, True, False, And, Or } kind;
  bool positive = true;
  int atom = -1;
  int left = -1;
  int right = -1;
};

class PropCompiler {
 public:
  int compile(const Formula& f) {
    PropNode n{};
    switch (f.kind()) {
      case FormulaKind::Literal: {
        Formula key = Formula::literal(f.name(), f.args(), true);
        auto [it, inserted] = atoms_.try_emplace(key, static_cast<int>(atoms_.size()));
        n.kind = PropNode::Atom;
        n.atom = it->second;
        n.positive = f.positive();
        break;
      }
      case FormulaKind::Top: n.kind = PropNode::True; break;
      case FormulaKind::Bottom: n.kind = PropNode::False; break;
      case FormulaKind::And:
      case FormulaKind::Or: {
        int l = compile(f.left());
        int r = compile(f.right());
        n.kind = f.kind() == FormulaKind::And ? PropNode::And : PropNode::Or;
        n.left = l;
        n.right = r;
        break;
      }
      default: throw Error(ErrorKind::NotQuantifierFree, "tautology check on quantified formula");
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size() - 1);
  }
  const std::vector<PropNode>& nodes() const { return nodes_; }
  std::size_t atom_count() const { return atoms_.size(); }

 private:
  std::map<Formula, int> atoms_;
  std::vector<PropNode> nodes_;
};

// Three-valued evaluation under a partial assignment (-1 unknown).
inline int eval3(const std::vector<PropNode>& ns, int i, const std::vector<int>& val) {
  const auto& n = ns[static_cast<std::size_t>(i)];
  switch (n.kind) {
    case PropNode::Atom: {
      int v = val[static_cast<std::size_t>(n.atom)];
      if (v < 0) return -1;
      return n.positive ? v : 1 - v;
    }
    case PropNode::True: return 1;
    case PropNode::False: return 0;
    case PropNode::And: {
      int a = eval3(ns, n.left, val);
      if (a == 0) return 0;
      int b = eval3(ns, n.right, val);
      if (b == 0) return 0;
      return (a == 1 && b == 1) ? 1 : -1;
    }
    case PropNode::Or: {
      int a = eval3(ns, n.left, val);
      if (a == 1) return 1;
      int b = eval3(ns, n.right, val);
      if (b == 1) return 1;
      return (a == 0 && b == 0) ? 0 : -1;
    }
  }
  return -1;
}

inline int eval_disjunction(const std::vector<PropNode>& ns, const std::vector<int>& roots, const std::vector<int>& val) {
  bool unknown = false;
  for (int r : roots) {
    int v = eval3(ns, r, val);
    if (v == 1) return 1;
    if (v < 0) unknown = true;
  }
  return unknown ? -1 : 0;
}

// Splitting search for a falsifying assignment; prunes on partial values.
inline bool falsifiable(const std::vector<PropNode>& ns, const std::vector<int>& roots, std::vector<int>& val,
                        std::size_t next) {
  int v = eval_disjunction(ns, roots, val);
  if (v == 1) return false;
  if (v == 0) return true;
  while (next < val.size() && val[next] >= 0) ++next;
  if (next >= val.size()) return false;
  for (int b : {0, 1}) {
    val[next] = b;
    if (falsifiable(ns, roots, val, next + 1)) return true;
  }
  val[next] = -1;
  return false;
}

}  // namespace detail

/// Propositional validity of the disjunction of `fs`, ground atoms being
/// opaque variables. Truth table up to 20 atoms, splitting beyond.
inline bool is_tautology(const std::vector<Formula>& fs) {
  detail::PropCompiler pc;
  std::vector<int> roots;
  for (const auto& f : fs) roots.push_back(pc.compile(f));
  const auto& ns = pc.nodes();
  std::size_t n = pc.atom_count();
  if (n <= 20) {
    std::vector<int> val(n, 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      for (std::size_t i = 0; i < n; ++i) val[i] = static_cast<int>((mask >> i) & 1U);
      if (detail::eval_disjunction(ns, roots, val) != 1) return false;
    }
    return true;
  }
  std::vector<int> val(n, -1);
  return !detail::falsifiable(ns, roots, val, 0);
}

inline bool is_tautology(const FormulaSet& fs) { return is_tautology(std::vector<Formula>(fs.begin(), fs.end())); }

}  // namespace hcont
