#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "hcont/grammar.hpp"
#include "hcont/syntax.hpp"

namespace hcont {

/// Reads `start θ; [nonterminals ...;] [rigid ...;] θ -> t | u; ...`.
/// Non-terminals are the start symbol, the declared names, and every left
/// side.
inline Grammar parse_grammar(std::string_view src) {
  Lexer lx(src);
  lx.set_semicolon_comments(false);
  Grammar g;
  bool have_start = false;
  std::vector<std::pair<std::string, Term>> prods;
  while (!lx.at_end()) {
    std::string head = lx.name();
    if (head == "start") {
      g.set_start(lx.name());
      have_start = true;
      lx.expect(';');
    } else if (head == "rigid" || head == "nonterminals") {
      while (!lx.accept(';')) g.add_nonterminal(lx.name(), head == "rigid");
    } else {
      if (!lx.accept("->")) lx.fail("expected '->'");
      do {
        prods.emplace_back(head, parse_term(lx));
      } while (lx.accept('|'));
      lx.expect(';');
    }
  }
  if (!have_start) lx.fail("missing start declaration");
  for (const auto& [l, r] : prods) g.add_nonterminal(l, false);
  for (const auto& [l, r] : prods) g.add_production(l, r);
  g.validate();
  return g;
}

inline std::string print_grammar(const Grammar& g) {
  std::string out = "start " + print_name(g.start()) + ";\n";
  std::set<std::string> implied = g.rigid();
  implied.insert(g.start());
  for (const auto& p : g.productions()) implied.insert(p.lhs);
  std::string extra;
  for (const auto& n : g.nonterminals())
    if (!implied.count(n)) extra += " " + print_name(n);
  if (!extra.empty()) out += "nonterminals" + extra + ";\n";
  if (!g.rigid().empty()) {
    out += "rigid";
    for (const auto& n : g.rigid()) out += " " + print_name(n);
    out += ";\n";
  }
  std::vector<std::string> lhs_order;
  for (const auto& p : g.productions())
    if (std::find(lhs_order.begin(), lhs_order.end(), p.lhs) == lhs_order.end()) lhs_order.push_back(p.lhs);
  for (const auto& l : lhs_order) {
    out += print_name(l) + " ->";
    bool first = true;
    for (auto i : g.productions_of(l)) {
      out += first ? " " : " | ";
      first = false;
      out += to_string(g.productions()[i].rhs);
    }
    out += ";\n";
  }
  return out;
}

inline nlohmann::json grammar_to_json(const Grammar& g) {
  nlohmann::json prods = nlohmann::json::array();
  for (const auto& p : g.productions()) {
    nlohmann::json srcs = nlohmann::json::array();
    for (const auto& s : p.sources) srcs.push_back(to_string(s));
    prods.push_back({{"lhs", p.lhs}, {"rhs", to_string(p.rhs)}, {"sources", srcs}});
  }
  return {{"start", g.start()},
          {"nonterminals", g.nonterminals()},
          {"rigid", g.rigid()},
          {"productions", prods}};
}

inline std::vector<std::string> sorted_strings(const Language& l) {
  std::vector<std::string> v;
  for (const auto& t : l) v.push_back(to_string(t));
  std::sort(v.begin(), v.end());
  return v;
}

inline nlohmann::json language_to_json(const Language& l) { return sorted_strings(l); }

}  // namespace hcont
