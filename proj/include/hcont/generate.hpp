#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hcont/extraction.hpp"
#include "hcont/proof.hpp"

namespace hcont {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int max_cuts = 1;             // quantifier-free cuts
  int max_quantified_cuts = 1;  // generated exactly, when possible
  int max_term_depth = 2;
  int signature_size = 3;
  bool weak = true;  // end-sequent without universal quantifiers
  int operations = 6;
  std::size_t max_size = 400;
  std::size_t language_cap = 10000;
  int retries = 200;
};

/// Random simple proofs: cut-free skeletons built from identity proofs of
/// random quantifier-free formulas, with cuts spliced in over lemmas.
class ProofGenerator {
 public:
  explicit ProofGenerator(GeneratorConfig cfg) : cfg_(cfg), rng_(cfg.seed) {}

  Proof generate() {
    for (int attempt = 0; attempt < cfg_.retries; ++attempt) {
      counter_ = 0;
      qcuts_ = cuts_ = 0;
      Proof p;
      try {
        p = attempt_once();
      } catch (const Error&) {
        continue;
      }
      if (!p || p->size > cfg_.max_size) continue;
      if (qcuts_ < cfg_.max_quantified_cuts) continue;
      if (!cfg_.weak && !has_forall(p->conclusion)) continue;
      if (check_wellformed(p) || !is_simple(p)) continue;
      try {
        compute_language(extract_grammar(p), cfg_.language_cap);
      } catch (const Error&) {
        continue;
      }
      return p;
    }
    throw Error(ErrorKind::GenerationFailed, "no proof generated after " + std::to_string(cfg_.retries) + " attempts");
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin(int num = 1, int den = 2) { return pick(static_cast<std::size_t>(den)) < static_cast<std::size_t>(num); }
  std::string fresh(const std::string& base) { return base + std::to_string(++counter_); }

  static bool has_forall(const std::vector<Formula>& seq) {
    for (const auto& f : seq)
      if (contains_forall(f)) return true;
    return false;
  }

  Term random_term(int depth) {
    static const char* consts[] = {"a", "b", "c", "d", "k"};
    std::size_t nc = static_cast<std::size_t>(std::clamp(cfg_.signature_size, 1, 5));
    if (depth <= 1 || coin(1, 2)) {
      if (!cfg_.weak && coin(1, 3)) return Term(fresh("e"));
      return Term(consts[pick(nc)]);
    }
    if (coin()) return Term("f", {random_term(depth - 1)});
    return Term("g", {random_term(depth - 1), random_term(depth - 1)});
  }

  Formula random_literal() {
    std::size_t np = static_cast<std::size_t>(std::clamp(cfg_.signature_size, 1, 3));
    std::size_t which = pick(np);
    bool pos = coin();
    int d = std::max(1, cfg_.max_term_depth);
    if (which == 0) return Formula::literal("P", {random_term(d)}, pos);
    if (which == 1) return Formula::literal("Q", {random_term(d)}, pos);
    return Formula::literal("R", {random_term(d), random_term(d)}, pos);
  }

  Formula random_qf(int depth) {
    if (depth <= 0 || coin(2, 3)) return random_literal();
    Formula l = random_qf(depth - 1), r = random_qf(depth - 1);
    return coin() ? Formula::conj(l, r) : Formula::disj(l, r);
  }

  /// ⊢ C, dual(C) for quantifier-free C.
  static Proof identity(const Formula& c) {
    switch (c.kind()) {
      case FormulaKind::Literal: return make_ax(c);
      case FormulaKind::Top: return make_weak(make_top(), Formula::bottom());
      case FormulaKind::Bottom: return permute(make_weak(make_top(), Formula::bottom()), {1, 0});
      case FormulaKind::And: {
        Proof p = make_and(identity(c.left()), identity(c.right()), 0, 0);
        return make_or(p, 0, 1);
      }
      case FormulaKind::Or: return permute(identity(dual(c)), {1, 0});
      default: throw Error(ErrorKind::NotQuantifierFree, "identity of quantified formula");
    }
  }

  bool op_ex(Proof& cur, std::optional<std::size_t> only = std::nullopt, bool qf_only = false) {
    std::size_t i = only ? *only : pick(cur->conclusion.size());
    const Formula a = cur->conclusion[i];
    if (qf_only && !quantifier_free(a)) return false;
    std::set<Term> ts;
    collect_literal_terms(a, ts);
    auto bound = bound_variable_set(a);
    std::vector<Term> cands;
    for (const auto& t : ts) {
      std::set<std::string> ns;
      collect_names(t, ns);
      bool ok = true;
      for (const auto& n : ns)
        if (bound.count(n)) ok = false;
      if (ok) cands.push_back(t);
    }
    if (cands.empty()) return false;
    Term t = cands[pick(cands.size())];
    std::string x = fresh("x");
    Formula b = replace_term(a, t, Term(x));
    cur = make_ex(cur, static_cast<int>(i), t, Formula::exists(x, b));
    return true;
  }

  bool op_or(Proof& cur) {
    if (cur->conclusion.size() < 2) return false;
    std::size_t i = pick(cur->conclusion.size()), j = pick(cur->conclusion.size() - 1);
    if (j >= i) ++j;
    cur = make_or(cur, static_cast<int>(i), static_cast<int>(j));
    return true;
  }

  bool op_weak(Proof& cur) {
    cur = make_weak(cur, random_qf(1));
    return true;
  }

  bool op_and(Proof& cur) {
    Proof other = identity(random_qf(1));
    if (coin()) op_ex(other);
    std::size_t i = pick(cur->conclusion.size()), j = pick(other->conclusion.size());
    cur = make_and(cur, other, static_cast<int>(i), static_cast<int>(j));
    return true;
  }

  bool op_forall(Proof& cur) {
    std::size_t i = pick(cur->conclusion.size());
    const Formula a = cur->conclusion[i];
    std::set<std::string> names;
    free_names(a, names);
    std::vector<std::string> cands;
    auto evs = eigenvariable_list(cur);
    for (const auto& n : names) {
      if (n.empty() || n[0] != 'e' || std::find(evs.begin(), evs.end(), n) != evs.end()) continue;
      bool elsewhere = false;
      for (std::size_t k = 0; k < cur->conclusion.size(); ++k)
        if (k != i && occurs_free(n, cur->conclusion[k])) elsewhere = true;
      if (!elsewhere) cands.push_back(n);
    }
    if (cands.empty()) return false;
    std::string e = cands[pick(cands.size())];
    std::string y = fresh("y");
    cur = make_all(cur, static_cast<int>(i), e, Formula::forall(y, replace_term(a, Term(e), Term(y))));
    return true;
  }

  // Joins the proof with a renamed copy in which constant c is replaced;
  // corresponding occurrences are contracted, after abstracting c where
  // they differ.
  bool op_pair(Proof& cur) {
    if (cur->size * 2 > cfg_.max_size) return false;
    std::set<std::string> cs;
    for (const auto& f : cur->conclusion) free_names(f, cs);
    std::vector<std::string> cands;
    for (const auto& n : cs)
      if (n == "a" || n == "b" || n == "c" || n == "d" || n == "k") cands.push_back(n);
    if (cands.empty()) return false;
    std::string c = cands[pick(cands.size())];
    Substitution s{{c, random_term(std::max(1, cfg_.max_term_depth))}};
    for (const auto& ev : eigenvariable_list(cur)) s[ev] = Term(fresh(ev + "_"));
    Proof copy = substitute_proof(cur, s);
    const std::size_t n = cur->conclusion.size();
    std::size_t join = pick(n);
    Proof p = make_and(cur, copy, static_cast<int>(join), static_cast<int>(join));
    // Left occurrences k != join sit at k' = index among the rest, right ones follow.
    auto left_index = [&](std::size_t k) { return p->descendant_of(0, static_cast<int>(k)); };
    auto right_index = [&](std::size_t k) { return p->descendant_of(1, static_cast<int>(k)); };
    std::vector<std::pair<Formula, Formula>> todo;
    for (std::size_t k = 0; k < n; ++k)
      if (k != join) todo.push_back({p->conclusion[static_cast<std::size_t>(left_index(k))],
                                     p->conclusion[static_cast<std::size_t>(right_index(k))]});
    for (const auto& [fl, fr] : todo) {
      if (!coin(2, 3)) continue;
      auto find = [&](const Formula& f, int skip) {
        for (std::size_t q = 0; q < p->conclusion.size(); ++q)
          if (static_cast<int>(q) != skip && p->conclusion[q] == f) return static_cast<int>(q);
        return -1;
      };
      int il = find(fl, -1);
      int ir = find(fr, il);
      if (il < 0 || ir < 0) continue;
      if (fl != fr) {
        if (!quantifier_free(fl) && coin()) continue;
        std::string x = fresh("x");
        Formula b = replace_term(fl, Term(c), Term(x));
        Formula ex = Formula::exists(x, b);
        if (instantiate(ex, s.at(c)) != fr) continue;
        p = make_ex(p, il, Term(c), ex);
        ir = find(fr, -1);
        p = make_ex(p, ir, s.at(c), ex);
        int a1 = -1, a2 = -1;
        for (std::size_t q = 0; q < p->conclusion.size(); ++q)
          if (p->conclusion[q] == ex) (a1 < 0 ? a1 : a2) = static_cast<int>(q);
        if (a2 < 0) continue;
        p = make_cont(p, a1, a2);
      } else {
        p = make_cont(p, il, ir);
      }
    }
    cur = p;
    return true;
  }

  bool op_cut(Proof& cur) {
    std::vector<std::size_t> qf;
    for (std::size_t i = 0; i < cur->conclusion.size(); ++i)
      if (quantifier_free(cur->conclusion[i])) qf.push_back(i);
    if (qf.empty()) return false;
    std::size_t i = qf[pick(qf.size())];
    const Formula a = cur->conclusion[i];
    Proof right = identity(dual(a));  // ⊢ dual(A), A
    if (coin()) op_ex(right, 1);
    if (coin(1, 3)) right = make_weak(right, random_qf(1));
    cur = make_cut(cur, right, static_cast<int>(i), 0);
    ++cuts_;
    return true;
  }

  bool op_qcut(Proof& cur) {
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < cur->conclusion.size(); ++i) {
      const auto& f = cur->conclusion[i];
      if (f.kind() == FormulaKind::Exists && quantifier_free(f.body())) cands.push_back(i);
    }
    if (cands.empty()) {
      std::vector<std::size_t> qf;
      for (std::size_t i = 0; i < cur->conclusion.size(); ++i)
        if (quantifier_free(cur->conclusion[i])) qf.push_back(i);
      if (qf.empty()) return false;
      std::size_t i = qf[pick(qf.size())];
      if (!op_ex(cur, i, true)) return false;
      cands.push_back(cur->conclusion.size() - 1);
    }
    std::size_t i = cands[pick(cands.size())];
    const Formula ex = cur->conclusion[i];
    std::string alpha = fresh("α");
    Formula ba = instantiate(ex, Term(alpha));
    Proof psi;
    if (coin()) {
      psi = identity(ba);  // ⊢ Bα, dual(Bα)
    } else {
      // The universal side uses its premise twice.
      psi = make_cont(make_and(identity(ba), identity(ba), 0, 0), 0, 1);  // ⊢ Bα∧Bα, dual(Bα)
    }
    const int neg = 1;
    // Abstract α from the remaining occurrence so the eigenvariable condition holds.
    int other = 1 - neg;
    const Formula rest = psi->conclusion[static_cast<std::size_t>(other)];
    std::string z = fresh("x");
    psi = make_ex(psi, other, Term(alpha), Formula::exists(z, replace_term(rest, Term(alpha), Term(z))));
    int negi = -1;
    for (std::size_t q = 0; q < psi->conclusion.size(); ++q)
      if (psi->conclusion[q] == dual(ba)) negi = static_cast<int>(q);
    Proof right = make_all(psi, negi, alpha, dual(ex));
    int ui = right->main_index();
    if (coin()) cur = make_cut(cur, right, static_cast<int>(i), ui);
    else cur = make_cut(right, cur, ui, static_cast<int>(i));
    ++qcuts_;
    return true;
  }

  Proof attempt_once() {
    Proof cur = identity(random_qf(1));
    if (coin()) cur = make_and(cur, identity(random_qf(1)), 0, 0);
    std::vector<int> plan;
    for (int k = 0; k < cfg_.operations; ++k) plan.push_back(static_cast<int>(pick(7)));
    for (int k = 0; k < cfg_.max_quantified_cuts; ++k)
      plan.insert(plan.begin() + static_cast<long>(pick(plan.size() + 1)), 100);
    for (int k = 0; k < cfg_.max_cuts; ++k)
      if (coin()) plan.insert(plan.begin() + static_cast<long>(pick(plan.size() + 1)), 101);
    for (int op : plan) {
      switch (op) {
        case 0: op_ex(cur); break;
        case 1: op_or(cur); break;
        case 2: op_weak(cur); break;
        case 3: op_and(cur); break;
        case 4: op_pair(cur); break;
        case 5:
          if (!cfg_.weak) op_forall(cur);
          else op_ex(cur);
          break;
        case 6: op_ex(cur); break;
        case 100: op_qcut(cur); break;
        case 101: op_cut(cur); break;
      }
    }
    if (!cfg_.weak)
      for (int k = 0; k < 3 && !has_forall(cur->conclusion); ++k) op_forall(cur);
    return cur;
  }

  GeneratorConfig cfg_;
  std::mt19937_64 rng_;
  int counter_ = 0;
  int qcuts_ = 0;
  int cuts_ = 0;
};

inline Proof generate_proof(const GeneratorConfig& cfg) { return ProofGenerator(cfg).generate(); }

}  // namespace hcont
