#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hcont {

enum class ErrorKind {
  PositionOutOfRange,
  CaptureDetected,
  NotQuantifierFree,
  NotExistential,
  NotSimple,
  NotWellFormed,
  StaleRedex,
  PreconditionViolated,
  NotAcyclic,
  NotTotallyRigid,
  SizeCap,
  NonCanonicalizable,
  UnknownVariable,
  ArityMismatch,
  Parse,
  InvalidLocator,
  GenerationFailed,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::PositionOutOfRange: return "position-out-of-range";
    case ErrorKind::CaptureDetected: return "capture-detected";
    case ErrorKind::NotQuantifierFree: return "not-quantifier-free";
    case ErrorKind::NotExistential: return "not-existential";
    case ErrorKind::NotSimple: return "not-simple";
    case ErrorKind::NotWellFormed: return "not-well-formed";
    case ErrorKind::StaleRedex: return "stale-redex";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
    case ErrorKind::NotAcyclic: return "not-acyclic";
    case ErrorKind::NotTotallyRigid: return "not-totally-rigid";
    case ErrorKind::SizeCap: return "size-cap";
    case ErrorKind::NonCanonicalizable: return "non-canonicalizable";
    case ErrorKind::UnknownVariable: return "unknown-variable";
    case ErrorKind::ArityMismatch: return "arity-mismatch";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InvalidLocator: return "invalid-locator";
    case ErrorKind::GenerationFailed: return "generation-failed";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

enum class SymbolKind { Function, Predicate, Skolem, Eigenvariable, BoundVariable };

/// A symbol of a ranked alphabet. Skolem symbols remember the quantifier
/// they replace as (formula index, quantifier index), both 1-based.
struct Symbol {
  std::string name;
  std::size_t arity = 0;
  SymbolKind kind = SymbolKind::Function;
  std::optional<std::pair<int, int>> skolem_origin;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// First-order term. A nullary term doubles as a variable; whether a name is
/// a constant, an eigenvariable or a bound variable is decided by context.
struct Term {
  std::string head;
  std::vector<Term> args;

  Term() = default;
  explicit Term(std::string h, std::vector<Term> a = {}) : head(std::move(h)), args(std::move(a)) {}

  bool is_atomic() const { return args.empty(); }

  friend bool operator==(const Term& a, const Term& b) {
    return a.head == b.head && a.args == b.args;
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.head <=> b.head; c != 0) return c;
    if (auto c = a.args.size() <=> b.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (auto c = a.args[i] <=> b.args[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }
};

/// 1-based child indices from the root; the empty position is the root.
using Position = std::vector<int>;
using Substitution = std::map<std::string, Term>;

inline std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args) n += term_size(a);
  return n;
}

inline std::size_t term_depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& a : t.args) d = std::max(d, term_depth(a));
  return d + 1;
}

inline const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int i : p) {
    if (i < 1 || static_cast<std::size_t>(i) > cur->args.size())
      throw Error(ErrorKind::PositionOutOfRange, "position does not exist in term");
    cur = &cur->args[static_cast<std::size_t>(i - 1)];
  }
  return *cur;
}

inline Term replace_at(const Term& t, const Position& p, const Term& by, std::size_t from = 0) {
  if (from == p.size()) return by;
  int i = p[from];
  if (i < 1 || static_cast<std::size_t>(i) > t.args.size())
    throw Error(ErrorKind::PositionOutOfRange, "position does not exist in term");
  Term r = t;
  r.args[static_cast<std::size_t>(i - 1)] = replace_at(t.args[static_cast<std::size_t>(i - 1)], p, by, from + 1);
  return r;
}

inline void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    cur.push_back(static_cast<int>(i + 1));
    collect_positions(t.args[i], cur, out);
    cur.pop_back();
  }
}

/// Pos(t) in pre-order.
inline std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

inline bool occurs(const std::string& name, const Term& t) {
  if (t.head == name) return true;
  for (const auto& a : t.args)
    if (occurs(name, a)) return true;
  return false;
}

inline void collect_names(const Term& t, std::set<std::string>& out) {
  out.insert(t.head);
  for (const auto& a : t.args) collect_names(a, out);
}

/// Simultaneous replacement of nullary occurrences.
inline Term apply_subst(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  if (t.args.empty()) {
    auto it = s.find(t.head);
    return it == s.end() ? t : it->second;
  }
  Term r(t.head);
  r.args.reserve(t.args.size());
  for (const auto& a : t.args) r.args.push_back(apply_subst(a, s));
  return r;
}

/// Replace every occurrence of the subterm `what` by `by`.
inline Term replace_subterm(const Term& t, const Term& what, const Term& by) {
  if (t == what) return by;
  Term r(t.head);
  r.args.reserve(t.args.size());
  for (const auto& a : t.args) r.args.push_back(replace_subterm(a, what, by));
  return r;
}

inline void collect_subterms(const Term& t, std::set<Term>& out) {
  out.insert(t);
  for (const auto& a : t.args) collect_subterms(a, out);
}

}  // namespace hcont
