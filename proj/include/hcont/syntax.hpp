#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "hcont/formula.hpp"
#include "hcont/term.hpp"

namespace hcont {

inline bool is_name_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '\'' || c == '.' || u >= 0x80;
}

/// Names outside the plain identifier alphabet are written in double quotes.
inline std::string print_name(const std::string& n) {
  bool plain = !n.empty();
  for (char c : n)
    if (!is_name_char(c)) plain = false;
  if (plain) return n;
  std::string r = "\"";
  for (char c : n) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + "\"";
}

inline void print_term(const Term& t, std::string& out) {
  out += print_name(t.head);
  if (t.args.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ',';
    print_term(t.args[i], out);
  }
  out += ')';
}

inline std::string to_string(const Term& t) {
  std::string s;
  print_term(t, s);
  return s;
}

inline void print_formula(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Literal:
      if (!f.positive()) out += '~';
      print_term(Term(f.name(), f.args()), out);
      break;
    case FormulaKind::Top: out += "top"; break;
    case FormulaKind::Bottom: out += "bot"; break;
    case FormulaKind::And:
    case FormulaKind::Or:
      out += f.kind() == FormulaKind::And ? "(and " : "(or ";
      print_formula(f.left(), out);
      out += ' ';
      print_formula(f.right(), out);
      out += ')';
      break;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += f.kind() == FormulaKind::Exists ? "(ex " : "(all ";
      out += print_name(f.name());
      out += ' ';
      print_formula(f.body(), out);
      out += ')';
      break;
  }
}

inline std::string to_string(const Formula& f) {
  std::string s;
  print_formula(f, s);
  return s;
}

/// Character-level cursor shared by the proof, grammar and formula readers.
/// Errors carry the byte offset.
class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';' && comment_semicolon_) {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip_ws();
    return pos_ >= src_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool peek_string(std::string_view s) {
    skip_ws();
    return src_.substr(pos_, s.size()) == s;
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept(std::string_view s) {
    if (peek_string(s)) {
      pos_ += s.size();
      return true;
    }
    return false;
  }
  /// Like accept, but only when `c` immediately follows without whitespace.
  bool accept_adjacent(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_name() {
    char c = peek();
    return c == '"' || (c != '\0' && is_name_char(c));
  }
  std::string name() {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '"') {
      ++pos_;
      std::string r;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
        r += src_[pos_++];
      }
      if (pos_ >= src_.size()) fail("unterminated quoted name");
      ++pos_;
      return r;
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(src_.substr(start, pos_ - start));
  }
  long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < src_.size() && src_[pos_] == '-') ++pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return std::stol(std::string(src_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at offset " + std::to_string(pos_));
  }
  std::size_t offset() const { return pos_; }
  void set_semicolon_comments(bool on) { comment_semicolon_ = on; }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  bool comment_semicolon_ = true;
};

inline Term parse_term(Lexer& lx) {
  Term t(lx.name());
  if (lx.accept_adjacent('(')) {
    if (!lx.accept(')')) {
      do {
        t.args.push_back(parse_term(lx));
      } while (lx.accept(','));
      lx.expect(')');
    }
  }
  return t;
}

inline Formula parse_formula(Lexer& lx) {
  if (lx.accept('(')) {
    std::string op = lx.name();
    Formula r;
    if (op == "and" || op == "or") {
      Formula a = parse_formula(lx);
      Formula b = parse_formula(lx);
      r = op == "and" ? Formula::conj(a, b) : Formula::disj(a, b);
    } else if (op == "ex" || op == "all") {
      std::string v = lx.name();
      Formula b = parse_formula(lx);
      r = op == "ex" ? Formula::exists(v, b) : Formula::forall(v, b);
    } else {
      lx.fail("unknown connective '" + op + "'");
    }
    lx.expect(')');
    return r;
  }
  bool positive = !lx.accept('~');
  Term atom = parse_term(lx);
  if (positive && atom.args.empty() && atom.head == "bot") return Formula::bottom();
  if (positive && atom.args.empty() && atom.head == "top") return Formula::top();
  return Formula::literal(atom.head, atom.args, positive);
}

inline Term parse_term(std::string_view s) {
  Lexer lx(s);
  Term t = parse_term(lx);
  if (!lx.at_end()) lx.fail("trailing input");
  return t;
}

inline Formula parse_formula(std::string_view s) {
  Lexer lx(s);
  Formula f = parse_formula(lx);
  if (!lx.at_end()) lx.fail("trailing input");
  return f;
}

inline std::string to_string(const FormulaSet& fs) {
  std::string s = "{";
  bool first = true;
  for (const auto& f : fs) {
    if (!first) s += ", ";
    first = false;
    s += to_string(f);
  }
  return s + "}";
}

inline std::vector<std::string> sorted_strings(const FormulaSet& fs) {
  std::vector<std::string> v;
  for (const auto& f : fs) v.push_back(to_string(f));
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace hcont
