#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcont/confluence.hpp"
#include "hcont/extraction.hpp"
#include "hcont/grammar_io.hpp"
#include "hcont/herbrand.hpp"
#include "hcont/proof_io.hpp"
#include "hcont/reduction.hpp"

namespace hcont {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Proof load_proof(const std::filesystem::path& path) { return parse_proof(read_text_file(path)); }

/// Comma- or newline-separated formulas.
inline std::vector<Formula> parse_sequent(std::string_view src) {
  Lexer lx(src);
  std::vector<Formula> out;
  while (!lx.at_end()) {
    out.push_back(parse_formula(lx));
    lx.accept(',');
  }
  return out;
}

struct CorpusEntry {
  std::string name;
  std::filesystem::path proof;
  std::filesystem::path golden;
  std::set<std::string> tags;
};

/// Entries listed in `<dir>/index.json`.
inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  auto j = nlohmann::json::parse(read_text_file(dir / "index.json"));
  std::vector<CorpusEntry> out;
  for (const auto& e : j.at("entries")) {
    CorpusEntry c;
    c.name = e.at("name").get<std::string>();
    c.proof = dir / (c.name + ".proof");
    c.golden = dir / "golden" / (c.name + ".json");
    for (const auto& t : e.at("tags")) c.tags.insert(t.get<std::string>());
    out.push_back(std::move(c));
  }
  return out;
}

/// Expected artifacts of a corpus proof. Everything is derived from the
/// proof with fixed strategies, so regeneration is byte-identical.
inline nlohmann::json make_golden(const Proof& p) {
  Grammar g = extract_grammar(p);
  nlohmann::json hashes = nlohmann::json::object();
  for (Mode m : {Mode::NonErasing, Mode::Full})
    for (Policy pol : {Policy::LeftmostInnermost, Policy::RightmostUppermost}) {
      Strategy s;
      s.policy = pol;
      auto r = reduce(p, s, m, {}, false);
      std::string key = std::string(m == Mode::Full ? "full/" : "noerase/") + to_string(pol);
      hashes[key] = r.trace.status == Status::NormalForm ? proof_hash(r.proof) : std::string(to_string(r.trace.status));
    }
  return {{"grammar", print_grammar(g)},
          {"language", language_to_json(compute_language(g))},
          {"content", formulas_to_json(herbrand_content(p))},
          {"normal_forms", hashes}};
}

struct PipelineResult {
  nlohmann::json bundle;
  bool capped = false;
  bool checks_ok = true;
};

/// Grammar, languages, content and the Skolemized twin of a simple proof,
/// with cross-checks between them.
inline PipelineResult run_pipeline(const Proof& p, std::size_t cap = default_language_cap, std::size_t budget = 100000) {
  require_simple(p);
  PipelineResult r;
  auto& b = r.bundle;
  nlohmann::json notices = nlohmann::json::array();
  nlohmann::json checks = nlohmann::json::object();
  Grammar g = extract_grammar(p);
  b["end_sequent"] = sequent_strings(p->conclusion);
  b["grammar"] = grammar_to_json(g);
  auto fail = [&](const std::string& what) { notices.push_back(what + ": size cap " + std::to_string(cap) + " reached"); r.capped = true; };

  std::optional<Language> lang;
  try {
    lang = compute_language(g, cap);
    b["language"] = language_to_json(*lang);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCap) throw;
    fail("language");
  }
  try {
    b["regular_language"] = language_to_json(compute_regular_language(derigidify(g), cap));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCap) throw;
    fail("regular_language");
  }

  auto sk = skolemize_proof(p);
  Grammar gs = extract_grammar(sk.proof);
  b["skolemized"] = {{"proof", print_proof(sk.proof)}, {"map", skolem_map_to_json(sk.map)}, {"grammar", grammar_to_json(gs)}};
  if (!lang) {
    b["notices"] = notices;
    return r;
  }
  try {
    Language ls = compute_language(gs, cap);
    b["skolemized"]["language"] = language_to_json(ls);
    bool commutes = ls == compute_language(substitute_grammar(g, sk.sigma), cap);
    checks["skolemization_commutes"] = commutes;
    r.checks_ok = r.checks_ok && commutes;

    FormulaSet content = deskolemize_instances(decode_language(ls), sk.map);
    b["content"] = formulas_to_json(content);
    auto hd = is_herbrand_disjunction(p->conclusion, content);
    checks["herbrand_disjunction"] = {{"acyclic", hd.acyclic}, {"tautology", hd.tautology}};
    r.checks_ok = r.checks_ok && hd.ok();

    Strategy s;
    s.budget = budget;
    auto nf = reduce(p, s, Mode::NonErasing, {}, false);
    checks["normal_form_status"] = to_string(nf.trace.status);
    if (nf.trace.status == Status::NormalForm) {
      bool same = normal_form_content(nf.proof) == content;
      checks["normal_form_content_equal"] = same;
      r.checks_ok = r.checks_ok && same;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCap) throw;
    fail("skolemized language");
  }
  b["checks"] = checks;
  b["notices"] = notices;
  return r;
}

}  // namespace hcont
