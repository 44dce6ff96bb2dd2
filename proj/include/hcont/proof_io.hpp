#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hcont/proof.hpp"
#include "hcont/syntax.hpp"

namespace hcont {

namespace detail {

inline Proof parse_proof_rec(Lexer& lx, Locator& loc) {
  auto wrap = [&](const auto& body) -> Proof {
    try {
      return body();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Parse) throw;
      throw Error(ErrorKind::Parse, std::string(e.what()) + " at node " + to_string(loc));
    }
  };
  lx.expect('(');
  std::string rule = lx.name();
  auto premise = [&](int k) {
    loc.push_back(k);
    Proof p = parse_proof_rec(lx, loc);
    loc.pop_back();
    return p;
  };
  auto idx = [&]() { return static_cast<int>(lx.integer()); };
  Proof r;
  if (rule == "ax") {
    Formula a = parse_formula(lx);
    if (!a.is_literal()) lx.fail("axiom formula must be a literal at node " + to_string(loc));
    r = wrap([&] { return make_ax(a); });
  } else if (rule == "top") {
    r = make_top();
  } else if (rule == "weak") {
    Proof p = premise(0);
    Formula a = parse_formula(lx);
    r = wrap([&] { return make_weak(p, a); });
  } else if (rule == "cont" || rule == "or") {
    Proof p = premise(0);
    int i = idx();
    int j = idx();
    r = wrap([&] { return rule == "cont" ? make_cont(p, i, j) : make_or(p, i, j); });
  } else if (rule == "cut" || rule == "and") {
    Proof l = premise(0);
    Proof rr = premise(1);
    int i = idx();
    int j = idx();
    r = wrap([&] { return rule == "cut" ? make_cut(l, rr, i, j) : make_and(l, rr, i, j); });
  } else if (rule == "all") {
    Proof p = premise(0);
    int i = idx();
    std::string ev = lx.name();
    Formula m = parse_formula(lx);
    r = wrap([&] { return make_all(p, i, ev, m); });
  } else if (rule == "ex") {
    Proof p = premise(0);
    int i = idx();
    Term t = parse_term(lx);
    Formula m = parse_formula(lx);
    r = wrap([&] { return make_ex(p, i, t, m); });
  } else if (rule == "exch") {
    // Reorders the conclusion of the node below it; not an inference.
    Proof p = parse_proof_rec(lx, loc);
    std::vector<int> order;
    while (lx.peek() != ')') order.push_back(idx());
    r = wrap([&] { return permute(p, order); });
  } else {
    lx.fail("unknown rule '" + rule + "' at node " + to_string(loc));
  }
  lx.expect(')');
  return r;
}

inline std::vector<int> order_relative_to_default(const ProofNode& n) {
  ProofNode d;
  d.premises = n.premises;
  d.aux = n.aux;
  if (n.rule == Rule::Ax) {
    return n.origin[0].index == 0 ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
  }
  std::optional<Formula> main;
  int mi = n.main_index();
  if (mi >= 0 && n.rule != Rule::Top) main = n.conclusion[static_cast<std::size_t>(mi)];
  if (n.rule == Rule::Top) return {0};
  assemble(d, main);
  std::vector<int> order;
  for (const auto& o : n.origin)
    for (std::size_t k = 0; k < d.origin.size(); ++k)
      if (d.origin[k] == o) order.push_back(static_cast<int>(k));
  return order;
}

inline void print_proof_rec(const Proof& p, int depth, std::string& out) {
  std::string ind(static_cast<std::size_t>(depth) * 2, ' ');
  std::vector<int> order = order_relative_to_default(*p);
  bool exch = false;
  for (std::size_t k = 0; k < order.size(); ++k)
    if (order[k] != static_cast<int>(k)) exch = true;
  if (exch) {
    out += ind + "(exch\n";
    ++depth;
    ind += "  ";
  }
  const auto& n = *p;
  auto main_formula = [&] { return to_string(n.conclusion[static_cast<std::size_t>(n.main_index())]); };
  switch (n.rule) {
    case Rule::Ax: {
      const Formula& a = n.conclusion[static_cast<std::size_t>(n.origin[0].index == 0 ? 0 : 1)];
      out += ind + "(ax " + to_string(a) + ")";
      break;
    }
    case Rule::Top: out += ind + "(top)"; break;
    case Rule::Weak:
      out += ind + "(weak\n";
      print_proof_rec(n.premises[0], depth + 1, out);
      out += "\n" + ind + "  " + main_formula() + ")";
      break;
    case Rule::Cont:
    case Rule::Or:
      out += ind + "(" + to_string(n.rule) + "\n";
      print_proof_rec(n.premises[0], depth + 1, out);
      out += "\n" + ind + "  " + std::to_string(n.aux[0].index) + " " + std::to_string(n.aux[1].index) + ")";
      break;
    case Rule::Cut:
    case Rule::And:
      out += ind + "(" + to_string(n.rule) + "\n";
      print_proof_rec(n.premises[0], depth + 1, out);
      out += "\n";
      print_proof_rec(n.premises[1], depth + 1, out);
      out += "\n" + ind + "  " + std::to_string(n.aux[0].index) + " " + std::to_string(n.aux[1].index) + ")";
      break;
    case Rule::Forall:
      out += ind + "(all\n";
      print_proof_rec(n.premises[0], depth + 1, out);
      out += "\n" + ind + "  " + std::to_string(n.aux[0].index) + " " + print_name(n.eigenvariable) + " " +
             main_formula() + ")";
      break;
    case Rule::Exists:
      out += ind + "(ex\n";
      print_proof_rec(n.premises[0], depth + 1, out);
      out += "\n" + ind + "  " + std::to_string(n.aux[0].index) + " " + to_string(n.witness) + " " + main_formula() +
             ")";
      break;
  }
  if (exch) {
    out += "\n" + ind;
    for (std::size_t k = 0; k < order.size(); ++k) out += (k ? " " : "") + std::to_string(order[k]);
    out += ")";
  }
}

}  // namespace detail

/// Reads a proof in the S-expression format. Errors name the node locator.
inline Proof parse_proof(std::string_view src) {
  Lexer lx(src);
  Locator loc;
  Proof p = detail::parse_proof_rec(lx, loc);
  if (!lx.at_end()) lx.fail("trailing input");
  return p;
}

/// Canonical text: one inference per line, premises indented.
inline std::string print_proof(const Proof& p) {
  std::string out;
  detail::print_proof_rec(p, 0, out);
  return out + "\n";
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

inline std::string proof_hash(const Proof& p) { return hex64(fnv1a(print_proof(p))); }

inline std::vector<std::string> sequent_strings(const std::vector<Formula>& seq) {
  std::vector<std::string> v;
  for (const auto& f : seq) v.push_back(to_string(f));
  return v;
}

/// JSON export; node ids are pre-order indices.
inline nlohmann::json proof_to_json(const Proof& p) {
  nlohmann::json nodes = nlohmann::json::array();
  std::function<int(const Proof&)> rec = [&](const Proof& q) -> int {
    int id = static_cast<int>(nodes.size());
    nodes.push_back(nlohmann::json::object());
    std::vector<int> kids;
    for (const auto& c : q->premises) kids.push_back(rec(c));
    nlohmann::json n;
    n["id"] = id;
    n["rule"] = to_string(q->rule);
    n["conclusion"] = sequent_strings(q->conclusion);
    n["premises"] = kids;
    nlohmann::json aux = nlohmann::json::array();
    for (const auto& a : q->aux) aux.push_back({a.premise, a.index});
    n["aux"] = aux;
    nlohmann::json origin = nlohmann::json::array();
    for (const auto& o : q->origin) origin.push_back({o.premise, o.index});
    n["origin"] = origin;
    if (q->rule == Rule::Forall) n["eigenvariable"] = q->eigenvariable;
    if (q->rule == Rule::Exists) n["witness"] = to_string(q->witness);
    nodes[static_cast<std::size_t>(id)] = n;
    return id;
  };
  rec(p);
  return nlohmann::json{{"root", 0}, {"nodes", nodes}, {"size", p->size}};
}

inline nlohmann::json diagnostic_to_json(const Diagnostic& d) {
  return nlohmann::json{{"locator", d.locator}, {"reason", d.reason}};
}

}  // namespace hcont
