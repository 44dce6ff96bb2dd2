#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "hcont/term.hpp"

namespace hcont {

enum class FormulaKind { Literal, Top, Bottom, And, Or, Exists, Forall };

/// Immutable NNF formula with shared subtrees. Negation only occurs on
/// literals, so the representation cannot express anything else.
class Formula {
 public:
  struct Node;

  Formula() : Formula(bottom()) {}

  static Formula literal(std::string pred, std::vector<Term> args, bool positive = true) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Literal, positive, std::move(pred),
                                                     std::move(args), {}, {}}));
  }
  static Formula top() {
    static const Formula f(std::make_shared<const Node>(Node{FormulaKind::Top, true, {}, {}, {}, {}}));
    return f;
  }
  static Formula bottom() {
    static const Formula f(
        std::make_shared<const Node>(Node{FormulaKind::Bottom, true, {}, {}, {}, {}}));
    return f;
  }
  static Formula conj(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
  static Formula exists(std::string var, Formula body) {
    return quant(FormulaKind::Exists, std::move(var), std::move(body));
  }
  static Formula forall(std::string var, Formula body) {
    return quant(FormulaKind::Forall, std::move(var), std::move(body));
  }

  FormulaKind kind() const { return n_->kind; }
  bool is_literal() const { return kind() == FormulaKind::Literal; }
  bool is_quantifier() const { return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall; }
  bool is_binary() const { return kind() == FormulaKind::And || kind() == FormulaKind::Or; }
  bool positive() const { return n_->positive; }
  /// Predicate name for literals, bound variable for quantifiers.
  const std::string& name() const { return n_->name; }
  const std::vector<Term>& args() const { return n_->args; }
  const Formula& left() const { return *n_->left; }
  const Formula& right() const { return *n_->right; }
  const Formula& body() const { return *n_->left; }

  friend bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return std::strong_ordering::equal;
    if (auto c = static_cast<int>(a.kind()) <=> static_cast<int>(b.kind()); c != 0) return c;
    switch (a.kind()) {
      case FormulaKind::Top:
      case FormulaKind::Bottom:
        return std::strong_ordering::equal;
      case FormulaKind::Literal: {
        if (auto c = a.name() <=> b.name(); c != 0) return c;
        if (auto c = a.positive() <=> b.positive(); c != 0) return c;
        if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
        for (std::size_t i = 0; i < a.args().size(); ++i)
          if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
        return std::strong_ordering::equal;
      }
      case FormulaKind::And:
      case FormulaKind::Or:
        if (auto c = a.left() <=> b.left(); c != 0) return c;
        return a.right() <=> b.right();
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        if (auto c = a.name() <=> b.name(); c != 0) return c;
        return a.body() <=> b.body();
    }
    return std::strong_ordering::equal;
  }

  struct Node {
    FormulaKind kind;
    bool positive;
    std::string name;
    std::vector<Term> args;
    std::shared_ptr<const Formula> left;
    std::shared_ptr<const Formula> right;
  };

 private:
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Formula binary(FormulaKind k, Formula a, Formula b) {
    return Formula(std::make_shared<const Node>(Node{k, true, {}, {}, std::make_shared<const Formula>(std::move(a)),
                                                     std::make_shared<const Formula>(std::move(b))}));
  }
  static Formula quant(FormulaKind k, std::string var, Formula body) {
    return Formula(std::make_shared<const Node>(
        Node{k, true, std::move(var), {}, std::make_shared<const Formula>(std::move(body)), {}}));
  }

  std::shared_ptr<const Node> n_;
};

using FormulaSet = std::set<Formula>;

inline Formula dual(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Literal: return Formula::literal(f.name(), f.args(), !f.positive());
    case FormulaKind::Top: return Formula::bottom();
    case FormulaKind::Bottom: return Formula::top();
    case FormulaKind::And: return Formula::disj(dual(f.left()), dual(f.right()));
    case FormulaKind::Or: return Formula::conj(dual(f.left()), dual(f.right()));
    case FormulaKind::Exists: return Formula::forall(f.name(), dual(f.body()));
    case FormulaKind::Forall: return Formula::exists(f.name(), dual(f.body()));
  }
  return f;
}

inline bool quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or: return quantifier_free(f.left()) && quantifier_free(f.right());
    case FormulaKind::Exists:
    case FormulaKind::Forall: return false;
    default: return true;
  }
}

inline bool contains_forall(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or: return contains_forall(f.left()) || contains_forall(f.right());
    case FormulaKind::Exists: return contains_forall(f.body());
    case FormulaKind::Forall: return true;
    default: return false;
  }
}

inline std::size_t quantifier_count(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or: return quantifier_count(f.left()) + quantifier_count(f.right());
    case FormulaKind::Exists:
    case FormulaKind::Forall: return 1 + quantifier_count(f.body());
    default: return 0;
  }
}

inline void bound_variables(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
      bound_variables(f.left(), out);
      bound_variables(f.right(), out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out.push_back(f.name());
      bound_variables(f.body(), out);
      break;
    default: break;
  }
}

inline std::set<std::string> bound_variable_set(const Formula& f) {
  std::vector<std::string> v;
  bound_variables(f, v);
  return {v.begin(), v.end()};
}

/// Names of term symbols occurring free (bound variables excluded).
inline void free_names(const Formula& f, std::set<std::string>& out, std::set<std::string> bound = {}) {
  switch (f.kind()) {
    case FormulaKind::Literal:
      for (const auto& t : f.args()) {
        std::set<std::string> n;
        collect_names(t, n);
        for (const auto& s : n)
          if (!bound.count(s)) out.insert(s);
      }
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      free_names(f.left(), out, bound);
      free_names(f.right(), out, bound);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      bound.insert(f.name());
      free_names(f.body(), out, bound);
      break;
    default: break;
  }
}

inline bool occurs_free(const std::string& name, const Formula& f) {
  std::set<std::string> n;
  free_names(f, n);
  return n.count(name) > 0;
}

namespace detail {
inline Formula subst_rec(const Formula& f, const Substitution& s, const std::set<std::string>& range_names) {
  switch (f.kind()) {
    case FormulaKind::Literal: {
      std::vector<Term> a;
      a.reserve(f.args().size());
      for (const auto& t : f.args()) a.push_back(apply_subst(t, s));
      return Formula::literal(f.name(), std::move(a), f.positive());
    }
    case FormulaKind::Top:
    case FormulaKind::Bottom: return f;
    case FormulaKind::And:
      return Formula::conj(subst_rec(f.left(), s, range_names), subst_rec(f.right(), s, range_names));
    case FormulaKind::Or:
      return Formula::disj(subst_rec(f.left(), s, range_names), subst_rec(f.right(), s, range_names));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      if (s.count(f.name()))
        throw Error(ErrorKind::CaptureDetected, "substitution domain contains bound variable " + f.name());
      if (range_names.count(f.name())) {
        std::set<std::string> inner;
        free_names(f.body(), inner);
        for (const auto& [k, t] : s)
          if (inner.count(k))
            throw Error(ErrorKind::CaptureDetected, "substitution range would be captured by " + f.name());
      }
      Formula b = subst_rec(f.body(), s, range_names);
      return f.kind() == FormulaKind::Exists ? Formula::exists(f.name(), b) : Formula::forall(f.name(), b);
    }
  }
  return f;
}
}  // namespace detail

/// Simultaneous substitution. Capture is an error, never resolved by renaming.
inline Formula apply_subst(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  std::set<std::string> range;
  for (const auto& [k, t] : s) collect_names(t, range);
  return detail::subst_rec(f, s, range);
}

/// Instantiate the bound variable of a quantifier: body[x\t].
inline Formula instantiate(const Formula& quantified, const Term& t) {
  return apply_subst(quantified.body(), Substitution{{quantified.name(), t}});
}

inline bool is_quantifier_free_or_throw(const Formula& f) {
  if (!quantifier_free(f)) throw Error(ErrorKind::NotQuantifierFree, "formula contains a quantifier");
  return true;
}

/// The order on quantifier-free formulas generated by bot <= A, A <= A and
/// congruence through the binary connectives.
inline bool leq_formula(const Formula& a, const Formula& b) {
  is_quantifier_free_or_throw(a);
  is_quantifier_free_or_throw(b);
  if (a.kind() == FormulaKind::Bottom) return true;
  if (a == b) return true;
  if (a.is_binary() && a.kind() == b.kind())
    return leq_formula(a.left(), b.left()) && leq_formula(a.right(), b.right());
  return false;
}

inline bool leq_formula_set(const FormulaSet& as, const FormulaSet& bs) {
  for (const auto& b : bs) is_quantifier_free_or_throw(b);
  for (const auto& a : as) {
    bool found = false;
    for (const auto& b : bs)
      if (leq_formula(a, b)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

/// Replace every occurrence of the ground subterm `what` by `by` in all literals.
inline Formula replace_term(const Formula& f, const Term& what, const Term& by) {
  switch (f.kind()) {
    case FormulaKind::Literal: {
      std::vector<Term> a;
      for (const auto& t : f.args()) a.push_back(replace_subterm(t, what, by));
      return Formula::literal(f.name(), std::move(a), f.positive());
    }
    case FormulaKind::And: return Formula::conj(replace_term(f.left(), what, by), replace_term(f.right(), what, by));
    case FormulaKind::Or: return Formula::disj(replace_term(f.left(), what, by), replace_term(f.right(), what, by));
    case FormulaKind::Exists: return Formula::exists(f.name(), replace_term(f.body(), what, by));
    case FormulaKind::Forall: return Formula::forall(f.name(), replace_term(f.body(), what, by));
    default: return f;
  }
}

inline void collect_literal_terms(const Formula& f, std::set<Term>& out) {
  switch (f.kind()) {
    case FormulaKind::Literal:
      for (const auto& t : f.args()) collect_subterms(t, out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_literal_terms(f.left(), out);
      collect_literal_terms(f.right(), out);
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall: collect_literal_terms(f.body(), out); break;
    default: break;
  }
}

}  // namespace hcont
