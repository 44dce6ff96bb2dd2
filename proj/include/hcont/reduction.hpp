#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "hcont/proof.hpp"
#include "hcont/proof_io.hpp"

namespace hcont {

enum class StepKind { Axiom, Quantifier, Propositional, Contraction, Weakening, UnaryPerm, BinaryPerm };

inline const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Axiom: return "axiom";
    case StepKind::Quantifier: return "quantifier";
    case StepKind::Propositional: return "propositional";
    case StepKind::Contraction: return "contraction";
    case StepKind::Weakening: return "weakening";
    case StepKind::UnaryPerm: return "unary-perm";
    case StepKind::BinaryPerm: return "binary-perm";
  }
  return "?";
}

enum class Mode { Full, NonErasing };

/// A match of a reduction step at the cut `cut`. `side` is the active
/// premise: the axiom, contraction, weakening or permuted premise; the
/// existential premise for quantifier steps; the conjunction premise for
/// propositional steps.
struct Redex {
  Locator cut;
  StepKind kind = StepKind::Axiom;
  int side = 0;
  Rule permuted = Rule::Ax;

  friend bool operator==(const Redex& a, const Redex& b) {
    return a.cut == b.cut && a.kind == b.kind && a.side == b.side;
  }
};

inline std::string to_string(const Redex& r) {
  return std::string(to_string(r.kind)) + "@" + to_string(r.cut) + "/" + std::to_string(r.side);
}

namespace detail {

// Whether the occurrence has a weakening among its ancestors, i.e. ⊥ in its Herbrand-set.
inline bool weakening_derived(const Proof& p, int i) {
  const ProofNode* n = p.get();
  const Origin& o = n->origin[static_cast<std::size_t>(i)];
  if (o.premise >= 0) return weakening_derived(n->premises[static_cast<std::size_t>(o.premise)], o.index);
  switch (n->rule) {
    case Rule::Weak: return true;
    case Rule::Cont:
    case Rule::Or:
    case Rule::And:
      for (const auto& a : n->aux)
        if (weakening_derived(n->premises[static_cast<std::size_t>(a.premise)], a.index)) return true;
      return false;
    case Rule::Forall:
    case Rule::Exists: return weakening_derived(n->premises[0], n->aux[0].index);
    default: return false;
  }
}

inline std::optional<Redex> classify(const ProofNode& k, int s, Mode mode) {
  const Proof& x = k.premises[static_cast<std::size_t>(s)];
  const Proof& y = k.premises[static_cast<std::size_t>(1 - s)];
  const int cx = k.aux[static_cast<std::size_t>(s)].index;
  const int cy = k.aux[static_cast<std::size_t>(1 - s)].index;
  Redex r;
  r.side = s;
  r.permuted = x->rule;
  if (x->rule == Rule::Ax) {
    // Replacing the axiom's atom by a weakened one would drop an instance.
    if (mode == Mode::NonErasing && weakening_derived(y, cy)) return std::nullopt;
    r.kind = StepKind::Axiom;
    return r;
  }
  if (x->is_main(static_cast<std::size_t>(cx))) {
    switch (x->rule) {
      case Rule::Weak:
        if (mode == Mode::NonErasing) return std::nullopt;
        r.kind = StepKind::Weakening;
        return r;
      case Rule::Cont: r.kind = StepKind::Contraction; return r;
      case Rule::Exists:
        if (y->rule == Rule::Forall && y->is_main(static_cast<std::size_t>(cy))) {
          r.kind = StepKind::Quantifier;
          return r;
        }
        return std::nullopt;
      case Rule::And:
        if (y->rule == Rule::Or && y->is_main(static_cast<std::size_t>(cy))) {
          r.kind = StepKind::Propositional;
          return r;
        }
        return std::nullopt;
      default: return std::nullopt;
    }
  }
  switch (x->rule) {
    case Rule::Weak:
    case Rule::Cont:
    case Rule::Or:
    case Rule::Forall:
    case Rule::Exists: r.kind = StepKind::UnaryPerm; return r;
    case Rule::And:
    case Rule::Cut: r.kind = StepKind::BinaryPerm; return r;
    default: return std::nullopt;
  }
}

// Identity of a conclusion occurrence across a rewrite: the subproof piece it
// comes from (role) and its index there.
struct Key {
  int role = -1;
  int index = 0;
  Locator raw;
  friend bool operator==(const Key&, const Key&) = default;
  friend auto operator<=>(const Key&, const Key&) = default;
};

inline Key trace_key(const Proof& root, int idx, const std::map<Locator, int>& pieces,
                     const std::map<Locator, Key>& mains) {
  Locator loc;
  const ProofNode* n = root.get();
  for (;;) {
    if (auto it = pieces.find(loc); it != pieces.end()) return {it->second, idx, {}};
    const auto& o = n->origin[static_cast<std::size_t>(idx)];
    if (o.premise >= 0) {
      loc.push_back(o.premise);
      n = n->premises[static_cast<std::size_t>(o.premise)].get();
      idx = o.index;
      continue;
    }
    if (auto it = mains.find(loc); it != mains.end()) return it->second;
    if (!n->aux.empty() && n->rule != Rule::Cut) {
      const auto& a = n->aux[0];
      loc.push_back(a.premise);
      n = n->premises[static_cast<std::size_t>(a.premise)].get();
      idx = a.index;
      continue;
    }
    return {-1, idx, loc};
  }
}

inline std::vector<Key> trace_all(const Proof& root, const std::map<Locator, int>& pieces,
                                  const std::map<Locator, Key>& mains = {}) {
  std::vector<Key> out;
  for (std::size_t i = 0; i < root->conclusion.size(); ++i)
    out.push_back(trace_key(root, static_cast<int>(i), pieces, mains));
  return out;
}

// Permute `fresh` so that its occurrences line up with `old_keys`.
inline Proof arrange(const Proof& fresh, const std::vector<Key>& new_keys, const std::vector<Key>& old_keys) {
  if (new_keys.size() != old_keys.size()) throw Error(ErrorKind::NotWellFormed, "rewrite changed the sequent size");
  std::vector<int> order;
  std::vector<bool> used(new_keys.size(), false);
  for (const auto& k : old_keys) {
    int found = -1;
    for (std::size_t j = 0; j < new_keys.size(); ++j)
      if (!used[j] && new_keys[j] == k) {
        found = static_cast<int>(j);
        break;
      }
    if (found < 0) throw Error(ErrorKind::NotWellFormed, "rewrite lost track of an occurrence");
    used[static_cast<std::size_t>(found)] = true;
    order.push_back(found);
  }
  return permute(fresh, order);
}

inline Proof cut_oriented(const Proof& xs, int cx, const Proof& ys, int cy, int s) {
  return s == 0 ? make_cut(xs, ys, cx, cy) : make_cut(ys, xs, cy, cx);
}

inline Locator cat(Locator a, std::initializer_list<int> b) {
  a.insert(a.end(), b);
  return a;
}

}  // namespace detail

struct StepRecord {
  Redex redex;
  bool forced_followup = false;
  Substitution rho1;
  Substitution rho2;
};

/// Rewrites cut nodes in place; owns the fresh-name supply for the
/// contraction step's copies.
class Reducer {
 public:
  explicit Reducer(const Proof& p, Mode mode = Mode::Full) : mode_(mode) { names_.reserve(proof_names(p)); }

  Mode mode() const { return mode_; }

  std::vector<Redex> find_redexes(const Proof& p) const {
    require_simple(p);
    std::vector<Redex> out;
    for_each_node(p, [&](const Proof& q, const Locator& loc) {
      if (q->rule != Rule::Cut) return;
      for (int s = 0; s < 2; ++s)
        if (auto r = detail::classify(*q, s, mode_)) {
          r->cut = loc;
          out.push_back(*r);
        }
    });
    return out;
  }

  /// One step; the result has the same end-sequent in the same order.
  Proof apply(const Proof& p, const Redex& r, StepRecord* rec = nullptr) {
    const Proof* k = nullptr;
    try {
      k = &node_at(p, r.cut);
    } catch (const Error&) {
      throw Error(ErrorKind::StaleRedex, "no node at " + to_string(r.cut));
    }
    if ((*k)->rule != Rule::Cut) throw Error(ErrorKind::StaleRedex, "redex does not point at a cut");
    auto cur = detail::classify(**k, r.side, mode_);
    if (!cur || cur->kind != r.kind)
      throw Error(ErrorKind::StaleRedex, "redex " + to_string(r) + " no longer matches");
    StepRecord local;
    StepRecord& sr = rec ? *rec : local;
    sr.redex = r;
    Proof replaced = rewrite(*k, r.kind, r.side, sr);
    return replace_node(p, r.cut, replaced);
  }

  Proof rewrite(const Proof& k, StepKind kind, int s, StepRecord& sr) {
    switch (kind) {
      case StepKind::Axiom: return axiom(k, s);
      case StepKind::Quantifier: return quantifier(k, s);
      case StepKind::Propositional: return propositional(k, s);
      case StepKind::Contraction: return contraction(k, s, sr);
      case StepKind::Weakening: return weakening(k, s);
      case StepKind::UnaryPerm: return unary_perm(k, s);
      case StepKind::BinaryPerm: return binary_perm(k, s, sr);
    }
    return k;
  }

 private:
  using Key = detail::Key;

  static int aux_of(const Proof& k, int s) { return k->aux[static_cast<std::size_t>(s)].index; }
  static const Proof& prem(const Proof& k, int s) { return k->premises[static_cast<std::size_t>(s)]; }

  Proof axiom(const Proof& k, int s) {
    const Proof& y = prem(k, 1 - s);
    int cx = aux_of(k, s), cy = aux_of(k, 1 - s);
    auto old_keys = detail::trace_all(k, {{{1 - s}, 0}}, {{{s}, Key{0, cy, {}}}});
    (void)cx;
    auto new_keys = detail::trace_all(y, {{{}, 0}});
    return detail::arrange(y, new_keys, old_keys);
  }

  Proof quantifier(const Proof& k, int s) {
    const Proof& e = prem(k, s);
    const Proof& w = prem(k, 1 - s);
    const Proof& psi1 = e->premises[0];
    const Proof& psi2 = w->premises[0];
    Proof psi2t = substitute_proof(psi2, {{w->eigenvariable, e->witness}});
    Proof n = detail::cut_oriented(psi1, e->aux[0].index, psi2t, w->aux[0].index, s);
    auto old_keys = detail::trace_all(k, {{{s, 0}, 0}, {{1 - s, 0}, 1}});
    auto new_keys = detail::trace_all(n, {{{s}, 0}, {{1 - s}, 1}});
    return detail::arrange(n, new_keys, old_keys);
  }

  Proof propositional(const Proof& k, int s) {
    const Proof& a = prem(k, s);
    const Proof& o = prem(k, 1 - s);
    const Proof& psi1 = a->premises[0];
    const Proof& psi2 = a->premises[1];
    const Proof& psi3 = o->premises[0];
    int a1 = a->aux[0].index, a2 = a->aux[1].index, o1 = o->aux[0].index, o2 = o->aux[1].index;
    Proof n;
    std::map<Locator, int> pieces;
    if (s == 0) {
      Proof inner = make_cut(psi1, psi3, a1, o1);
      n = make_cut(psi2, inner, a2, inner->descendant_of(1, o2));
      pieces = {{{1, 0}, 0}, {{0}, 1}, {{1, 1}, 2}};
    } else {
      Proof inner = make_cut(psi3, psi1, o1, a1);
      n = make_cut(inner, psi2, inner->descendant_of(0, o2), a2);
      pieces = {{{0, 1}, 0}, {{1}, 1}, {{0, 0}, 2}};
    }
    auto old_keys = detail::trace_all(k, {{{s, 0}, 0}, {{s, 1}, 1}, {{1 - s, 0}, 2}});
    auto new_keys = detail::trace_all(n, pieces);
    return detail::arrange(n, new_keys, old_keys);
  }

  Proof contraction(const Proof& k, int s, StepRecord& sr) {
    const Proof& x = prem(k, s);
    const Proof& y = prem(k, 1 - s);
    const Proof& psi1 = x->premises[0];
    int a1 = x->aux[0].index, a2 = x->aux[1].index, cy = aux_of(k, 1 - s);
    Substitution r1, r2;
    for (const auto& ev : eigenvariable_list(y)) {
      r1[ev] = Term(names_.fresh(ev));
      r2[ev] = Term(names_.fresh(ev));
    }
    sr.rho1 = r1;
    sr.rho2 = r2;
    Proof y1 = substitute_proof(y, r1);
    Proof y2 = substitute_proof(y, r2);
    Proof c2;
    std::map<Locator, int> pieces;  // relative to c2
    if (s == 0) {
      Proof c1 = make_cut(psi1, y1, a1, cy);
      c2 = make_cut(c1, y2, c1->descendant_of(0, a2), cy);
      pieces = {{{0, 0}, 0}, {{0, 1}, 1}, {{1}, 2}};
    } else {
      Proof c1 = make_cut(y1, psi1, cy, a1);
      c2 = make_cut(y2, c1, cy, c1->descendant_of(1, a2));
      pieces = {{{1, 1}, 0}, {{1, 0}, 1}, {{0}, 2}};
    }
    // Contract each context formula of the copies pairwise.
    std::vector<Key> tags = detail::trace_all(c2, pieces);
    Proof cur = c2;
    for (std::size_t j = 0; j < y->conclusion.size(); ++j) {
      if (static_cast<int>(j) == cy) continue;
      int i1 = -1, i2 = -1;
      for (std::size_t t = 0; t < tags.size(); ++t) {
        if (tags[t] == Key{1, static_cast<int>(j), {}}) i1 = static_cast<int>(t);
        if (tags[t] == Key{2, static_cast<int>(j), {}}) i2 = static_cast<int>(t);
      }
      cur = make_cont(cur, i1, i2);
      std::vector<Key> next;
      for (std::size_t t = 0; t < tags.size(); ++t)
        if (static_cast<int>(t) != i1 && static_cast<int>(t) != i2) next.push_back(tags[t]);
      next.push_back(Key{1, static_cast<int>(j), {}});
      tags = std::move(next);
    }
    auto old_keys = detail::trace_all(k, {{{s, 0}, 0}, {{1 - s}, 1}});
    return detail::arrange(cur, tags, old_keys);
  }

  Proof weakening(const Proof& k, int s) {
    const Proof& x = prem(k, s);
    const Proof& y = prem(k, 1 - s);
    int cy = aux_of(k, 1 - s);
    Proof cur = x->premises[0];
    std::vector<Key> tags;
    for (std::size_t m = 0; m < cur->conclusion.size(); ++m) tags.push_back({0, static_cast<int>(m), {}});
    for (std::size_t j = 0; j < y->conclusion.size(); ++j) {
      if (static_cast<int>(j) == cy) continue;
      cur = make_weak(cur, y->conclusion[j]);
      tags.push_back({1, static_cast<int>(j), {}});
    }
    auto old_keys = detail::trace_all(k, {{{s, 0}, 0}, {{1 - s}, 1}});
    return detail::arrange(cur, tags, old_keys);
  }

  Proof unary_perm(const Proof& k, int s) {
    const Proof& x = prem(k, s);
    const Proof& y = prem(k, 1 - s);
    const Proof& psi1 = x->premises[0];
    int cx = aux_of(k, s), cy = aux_of(k, 1 - s);
    int c1 = x->origin[static_cast<std::size_t>(cx)].index;
    Proof inner = detail::cut_oriented(psi1, c1, y, cy, s);
    auto d = [&](int i) { return inner->descendant_of(s, i); };
    const Formula& main = x->conclusion[static_cast<std::size_t>(x->main_index())];
    Proof n;
    switch (x->rule) {
      case Rule::Weak: n = make_weak(inner, main); break;
      case Rule::Cont: n = make_cont(inner, d(x->aux[0].index), d(x->aux[1].index)); break;
      case Rule::Or: n = make_or(inner, d(x->aux[0].index), d(x->aux[1].index)); break;
      case Rule::Forall: n = make_all(inner, d(x->aux[0].index), x->eigenvariable, main); break;
      case Rule::Exists: n = make_ex(inner, d(x->aux[0].index), x->witness, main); break;
      default: throw Error(ErrorKind::PreconditionViolated, "not a unary rule");
    }
    const Key main_key{2, 0, {}};
    auto old_keys = detail::trace_all(k, {{{s, 0}, 0}, {{1 - s}, 1}}, {{{s}, main_key}});
    auto new_keys = detail::trace_all(n, {{{0, s}, 0}, {{0, 1 - s}, 1}}, {{{}, main_key}});
    return detail::arrange(n, new_keys, old_keys);
  }

  Proof binary_perm(const Proof& k, int s, StepRecord& sr) {
    const Proof& x = prem(k, s);
    const Proof& y = prem(k, 1 - s);
    int cx = aux_of(k, s), cy = aux_of(k, 1 - s);
    const Origin o = x->origin[static_cast<std::size_t>(cx)];
    const int kk = o.premise;
    const Proof& psik = x->premises[static_cast<std::size_t>(kk)];
    const Proof& psio = x->premises[static_cast<std::size_t>(1 - kk)];
    Proof inner = detail::cut_oriented(psik, o.index, y, cy, s);
    const int dk = inner->descendant_of(s, x->aux[static_cast<std::size_t>(kk)].index);
    // The lower cut of a quantified cut pair would separate the universal
    // inference from its cut; permute it up again right away.
    if (x->rule == Rule::Cut && universal_side(*x) == kk) {
      Proof moved = unary_perm(inner, s);
      if (moved->conclusion != inner->conclusion) throw Error(ErrorKind::NotWellFormed, "follow-up changed sequent");
      inner = moved;
      sr.forced_followup = true;
    }
    Proof n;
    int ao = x->aux[static_cast<std::size_t>(1 - kk)].index;
    if (x->rule == Rule::And)
      n = kk == 0 ? make_and(inner, psio, dk, ao) : make_and(psio, inner, ao, dk);
    else
      n = kk == 0 ? make_cut(inner, psio, dk, ao) : make_cut(psio, inner, ao, dk);
    auto old_keys = detail::trace_all(k, {{{s, 0}, 0}, {{s, 1}, 1}, {{1 - s}, 2}});
    std::map<Locator, int> pieces;
    pieces[{1 - kk}] = 1 - kk;
    if (!sr.forced_followup) {
      pieces[{kk, s}] = kk;
      pieces[{kk, 1 - s}] = 2;
    } else {
      // inner is now all(cut(...)): the universal premise sits below the cut.
      pieces[{kk, 0, s}] = -100;
      pieces[{kk, 0, 1 - s}] = 2;
    }
    std::map<Locator, Key> mains;
    if (sr.forced_followup) mains[{kk}] = Key{kk, x->aux[static_cast<std::size_t>(kk)].index, {}};
    auto new_keys = detail::trace_all(n, pieces, mains);
    // Occurrences of the universal premise's context map to psik's context.
    if (sr.forced_followup) {
      const Proof& forall = psik;
      for (auto& key : new_keys)
        if (key.role == -100) {
          int d2 = forall->descendant_of(0, key.index);
          key = Key{kk, d2, {}};
        }
    }
    return detail::arrange(n, new_keys, old_keys);
  }

  Mode mode_;
  FreshNames names_;
};

/// All matches of reduction steps, cuts in pre-order, side 0 before side 1.
inline std::vector<Redex> find_redexes(const Proof& p, Mode mode) { return Reducer(p, mode).find_redexes(p); }

/// Single step with names fresh for `p`.
inline Proof apply_step(const Proof& p, const Redex& r, StepRecord* rec = nullptr) {
  Reducer red(p, Mode::Full);
  return red.apply(p, r, rec);
}

enum class Policy { LeftmostInnermost, LeftmostOutermost, RightmostUppermost, Random, Scripted };

inline const char* to_string(Policy p) {
  switch (p) {
    case Policy::LeftmostInnermost: return "leftmost-innermost";
    case Policy::LeftmostOutermost: return "leftmost-outermost";
    case Policy::RightmostUppermost: return "rightmost-uppermost";
    case Policy::Random: return "random";
    case Policy::Scripted: return "scripted";
  }
  return "?";
}

inline std::optional<Policy> parse_policy(const std::string& s) {
  for (auto p : {Policy::LeftmostInnermost, Policy::LeftmostOutermost, Policy::RightmostUppermost, Policy::Random,
                 Policy::Scripted})
    if (s == to_string(p)) return p;
  return std::nullopt;
}

struct Strategy {
  Policy policy = Policy::LeftmostInnermost;
  std::uint64_t seed = 0;
  std::vector<int> script;
  std::size_t budget = 100000;
  std::size_t size_cap = 200000;
};

namespace detail {

inline std::map<Locator, std::size_t> postorder_ranks(const Proof& p) {
  std::map<Locator, std::size_t> r;
  Locator loc;
  std::function<void(const Proof&)> rec = [&](const Proof& q) {
    for (std::size_t i = 0; i < q->premises.size(); ++i) {
      loc.push_back(static_cast<int>(i));
      rec(q->premises[i]);
      loc.pop_back();
    }
    if (q->rule == Rule::Cut) r.emplace(loc, r.size());
  };
  rec(p);
  return r;
}

}  // namespace detail

/// Chooses among `redexes` (listed in pre-order, side 0 first).
inline std::size_t choose_redex(const Proof& p, const std::vector<Redex>& redexes, const Strategy& s,
                                std::size_t step, std::mt19937_64& rng) {
  auto leftmost_innermost = [&]() {
    auto ranks = detail::postorder_ranks(p);
    std::size_t best = 0;
    for (std::size_t i = 1; i < redexes.size(); ++i) {
      auto a = std::make_pair(ranks.at(redexes[i].cut), redexes[i].side);
      auto b = std::make_pair(ranks.at(redexes[best].cut), redexes[best].side);
      if (a < b) best = i;
    }
    return best;
  };
  switch (s.policy) {
    case Policy::LeftmostInnermost: return leftmost_innermost();
    case Policy::LeftmostOutermost: return 0;
    case Policy::RightmostUppermost: {
      std::size_t best = 0;
      for (std::size_t i = 1; i < redexes.size(); ++i) {
        const auto& a = redexes[i];
        const auto& b = redexes[best];
        if (std::make_tuple(a.cut.size(), a.cut, a.side) > std::make_tuple(b.cut.size(), b.cut, b.side)) best = i;
      }
      return best;
    }
    case Policy::Random: return static_cast<std::size_t>(rng() % redexes.size());
    case Policy::Scripted:
      if (step < s.script.size() && s.script[step] >= 0 &&
          static_cast<std::size_t>(s.script[step]) < redexes.size())
        return static_cast<std::size_t>(s.script[step]);
      return leftmost_innermost();
  }
  return 0;
}

enum class Status { NormalForm, BudgetExhausted, SizeCap };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::NormalForm: return "normal-form";
    case Status::BudgetExhausted: return "budget-exhausted";
    case Status::SizeCap: return "size-cap";
  }
  return "?";
}

struct TraceEntry {
  StepRecord record;
  std::size_t size = 0;
  std::string hash;
};

struct ReductionTrace {
  std::vector<TraceEntry> steps;
  Status status = Status::NormalForm;
};

struct ReductionResult {
  Proof proof;
  ReductionTrace trace;
};

/// Observer called after each step with (before, after, record).
using StepObserver = std::function<void(const Proof&, const Proof&, const StepRecord&)>;

inline ReductionResult reduce(const Proof& p, const Strategy& s, Mode mode, const StepObserver& observe = {},
                              bool hashes = true) {
  require_simple(p);
  Reducer red(p, mode);
  std::mt19937_64 rng(s.seed);
  ReductionResult res{p, {}};
  for (std::size_t step = 0;; ++step) {
    auto redexes = red.find_redexes(res.proof);
    if (redexes.empty()) {
      res.trace.status = Status::NormalForm;
      return res;
    }
    if (step >= s.budget) {
      res.trace.status = Status::BudgetExhausted;
      return res;
    }
    if (res.proof->size > s.size_cap) {
      res.trace.status = Status::SizeCap;
      return res;
    }
    std::size_t pick = choose_redex(res.proof, redexes, s, step, rng);
    TraceEntry e;
    Proof next = red.apply(res.proof, redexes[pick], &e.record);
    e.size = next->size;
    if (hashes) e.hash = proof_hash(next);
    if (observe) observe(res.proof, next, e.record);
    res.proof = next;
    res.trace.steps.push_back(std::move(e));
  }
}

inline nlohmann::json trace_to_json(const ReductionTrace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& e = t.steps[i];
    nlohmann::json j{{"step", i + 1},
                     {"kind", to_string(e.record.redex.kind)},
                     {"side", e.record.redex.side},
                     {"locator", e.record.redex.cut},
                     {"size", e.size},
                     {"hash", e.hash}};
    if (e.record.forced_followup) j["forced_followup"] = true;
    if (!e.record.rho1.empty()) {
      nlohmann::json r1 = nlohmann::json::object(), r2 = nlohmann::json::object();
      for (const auto& [k, v] : e.record.rho1) r1[k] = to_string(v);
      for (const auto& [k, v] : e.record.rho2) r2[k] = to_string(v);
      j["rho1"] = r1;
      j["rho2"] = r2;
    }
    steps.push_back(j);
  }
  return steps;
}

}  // namespace hcont
