#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hcont/hcont.hpp"

using namespace hcont;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, Invalid = 2, PropertyFailed = 3, Budget = 4 };

struct Globals {
  std::uint64_t seed = 1;
  std::size_t budget = 100000;
  std::size_t cap = default_language_cap;
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream o(path, std::ios::binary);
  if (!o) throw Error(ErrorKind::Parse, "cannot write " + path);
  o << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string lines(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += x + "\n";
  return s;
}

Mode parse_mode(const std::string& m) {
  if (m == "full") return Mode::Full;
  if (m == "noerase") return Mode::NonErasing;
  throw Error(ErrorKind::PreconditionViolated, "unknown mode '" + m + "'");
}

int exit_for(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return e.kind() == ErrorKind::SizeCap ? Budget : Invalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut-reduction, proof grammars and Herbrand-content for simple proofs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for random strategies and the generator");
  app.add_option("--budget", g.budget, "Maximal number of reduction steps");
  app.add_option("--cap", g.cap, "Maximal language size");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));

  std::string input, output, map_path, seq_path, mode = "noerase", strategy = "leftmost-innermost", trace_path,
                                                 script, shape = "weak";
  std::size_t runs = 5;
  GeneratorConfig gen;
  bool golden = false;

  auto* check = app.add_subcommand("check", "Validate a proof: well-formedness, regularity, simplicity");
  check->add_option("proof", input)->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "Normalize a proof under a strategy");
  reduce_cmd->add_option("proof", input)->required();
  reduce_cmd->add_option("-o,--output", output);
  reduce_cmd->add_option("--mode", mode)->check(CLI::IsMember({"full", "noerase"}));
  reduce_cmd->add_option("--strategy", strategy);
  reduce_cmd->add_option("--script", script, "Comma-separated redex indices for the scripted strategy");
  reduce_cmd->add_option("--trace", trace_path, "Write the step trace as JSON");

  auto* grammar_cmd = app.add_subcommand("extract-grammar", "Print the grammar of a simple proof");
  grammar_cmd->add_option("proof", input)->required();
  grammar_cmd->add_option("-o,--output", output);

  auto* content_cmd = app.add_subcommand("content", "Herbrand-content as sorted JSON");
  content_cmd->add_option("proof", input)->required();
  content_cmd->add_option("-o,--output", output);

  auto* sk_cmd = app.add_subcommand("skolemize", "Skolemize a proof");
  sk_cmd->add_option("proof", input)->required();
  sk_cmd->add_option("-o,--output", output);
  sk_cmd->add_option("--map", map_path, "Write the Skolem map as JSON");

  auto* desk_cmd = app.add_subcommand("desk", "Deskolemize a set of instances");
  desk_cmd->add_option("content", input)->required();
  desk_cmd->add_option("--map", map_path)->required();
  desk_cmd->add_option("--sequent", seq_path)->required();
  desk_cmd->add_option("-o,--output", output);

  auto* conf_cmd = app.add_subcommand("confluence", "Compare normal forms of several strategies");
  conf_cmd->add_option("proof", input)->required();
  conf_cmd->add_option("--runs", runs);
  conf_cmd->add_option("--mode", mode)->check(CLI::IsMember({"full", "noerase"}));
  conf_cmd->add_option("-o,--output", output);

  auto* gen_cmd = app.add_subcommand("generate", "Generate a random simple proof");
  gen_cmd->add_option("--max-cuts", gen.max_cuts);
  gen_cmd->add_option("--max-quantified-cuts", gen.max_quantified_cuts);
  gen_cmd->add_option("--max-term-depth", gen.max_term_depth);
  gen_cmd->add_option("--signature-size", gen.signature_size);
  gen_cmd->add_option("--shape", shape)->check(CLI::IsMember({"weak", "general"}));
  gen_cmd->add_option("-o,--output", output);

  auto* pipe_cmd = app.add_subcommand("pipeline", "Grammar, languages, content and cross-checks");
  pipe_cmd->add_option("proof", input)->required();
  pipe_cmd->add_option("-o,--output", output);
  pipe_cmd->add_flag("--golden", golden, "Emit the corpus golden record instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      Proof p = load_proof(input);
      auto wf = check_wellformed(p);
      auto sd = wf ? std::nullopt : simple_diagnostic(p);
      json j = {{"end_sequent", sequent_strings(p->conclusion)},
                {"size", p->size},
                {"well_formed", !wf},
                {"regular", is_regular(p)},
                {"simple", !wf && !sd},
                {"weak", is_weak(p->conclusion)},
                {"hash", proof_hash(p)}};
      if (wf) j["diagnostic"] = {{"locator", to_string(wf->locator)}, {"reason", wf->reason}};
      else if (sd) j["diagnostic"] = {{"locator", to_string(sd->locator)}, {"reason", sd->reason}};
      if (g.json()) {
        std::cout << dump(j);
      } else {
        std::cout << "end-sequent: " << to_string(p->conclusion.empty() ? Formula::bottom() : p->conclusion[0]);
        for (std::size_t i = 1; i < p->conclusion.size(); ++i) std::cout << ", " << to_string(p->conclusion[i]);
        std::cout << "\nwell-formed: " << (!wf ? "yes" : "no") << "\nsimple: " << (j["simple"].get<bool>() ? "yes" : "no")
                  << "\nweak: " << (is_weak(p->conclusion) ? "yes" : "no") << "\n";
        if (j.contains("diagnostic"))
          std::cout << "at " << j["diagnostic"]["locator"].get<std::string>() << ": "
                    << j["diagnostic"]["reason"].get<std::string>() << "\n";
      }
      return j["simple"].get<bool>() ? Ok : Invalid;
    }

    if (reduce_cmd->parsed()) {
      Proof p = load_proof(input);
      require_simple(p);
      Strategy s;
      auto pol = parse_policy(strategy);
      if (!pol) throw Error(ErrorKind::PreconditionViolated, "unknown strategy '" + strategy + "'");
      s.policy = *pol;
      s.seed = g.seed;
      s.budget = g.budget;
      if (!script.empty()) {
        std::stringstream ss(script);
        std::string tok;
        while (std::getline(ss, tok, ',')) s.script.push_back(std::stoi(tok));
      }
      auto r = reduce(p, s, parse_mode(mode));
      if (!trace_path.empty()) write_out(trace_path, dump(trace_to_json(r.trace)));
      if (g.json())
        write_out(output, dump({{"status", to_string(r.trace.status)},
                                {"steps", r.trace.steps.size()},
                                {"hash", proof_hash(r.proof)},
                                {"proof", print_proof(r.proof)}}));
      else
        write_out(output, print_proof(r.proof));
      if (r.trace.status != Status::NormalForm) {
        std::cerr << "stopped: " << to_string(r.trace.status) << " after " << r.trace.steps.size() << " steps\n";
        return Budget;
      }
      return Ok;
    }

    if (grammar_cmd->parsed()) {
      Grammar gr = extract_grammar(load_proof(input));
      write_out(output, g.json() ? dump(grammar_to_json(gr)) : print_grammar(gr));
      return Ok;
    }

    if (content_cmd->parsed()) {
      auto c = herbrand_content(load_proof(input), g.cap);
      write_out(output, g.json() ? dump(formulas_to_json(c)) : lines(sorted_strings(c)));
      return Ok;
    }

    if (sk_cmd->parsed()) {
      auto sk = skolemize_proof(load_proof(input));
      write_out(output, print_proof(sk.proof));
      if (!map_path.empty()) write_out(map_path, dump(skolem_map_to_json(sk.map)));
      return Ok;
    }

    if (desk_cmd->parsed()) {
      FormulaSet fs = formulas_from_json(json::parse(read_text_file(input)));
      SkolemMap m = skolem_map_from_json(json::parse(read_text_file(map_path)));
      auto seq = parse_sequent(read_text_file(seq_path));
      if (seq != m.sequent) throw Error(ErrorKind::PreconditionViolated, "sequent does not match the Skolem map");
      auto d = deskolemize_instances(fs, m);
      write_out(output, g.json() ? dump(formulas_to_json(d)) : lines(sorted_strings(d)));
      return Ok;
    }

    if (conf_cmd->parsed()) {
      Proof p = load_proof(input);
      auto rep = check_confluence(p, runs, g.seed, g.budget, parse_mode(mode), g.cap);
      if (g.json()) {
        write_out(output, dump(confluence_to_json(rep)));
      } else {
        std::string s;
        for (const auto& r : rep.runs)
          s += std::string(to_string(r.strategy.policy)) + " seed=" + std::to_string(r.strategy.seed) + " " +
               to_string(r.status) + " steps=" + std::to_string(r.steps) +
               (r.content ? (r.matches ? " match" : " MISMATCH") : "") + "\n";
        s += std::string("verdict: ") + to_string(rep.verdict) + "\n";
        write_out(output, s);
      }
      if (rep.verdict == Verdict::Violation) return PropertyFailed;
      if (rep.verdict == Verdict::Inconclusive) return Budget;
      return Ok;
    }

    if (gen_cmd->parsed()) {
      gen.seed = g.seed;
      gen.weak = shape == "weak";
      gen.language_cap = std::min(gen.language_cap, g.cap);
      write_out(output, print_proof(generate_proof(gen)));
      return Ok;
    }

    if (pipe_cmd->parsed()) {
      Proof p = load_proof(input);
      if (golden) {
        write_out(output, dump(make_golden(p)));
        return Ok;
      }
      auto r = run_pipeline(p, g.cap, g.budget);
      write_out(output, dump(r.bundle));
      if (!r.checks_ok) return PropertyFailed;
      return r.capped ? Budget : Ok;
    }
  } catch (const Error& e) {
    return exit_for(e);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Invalid;
  }
  return Ok;
}
