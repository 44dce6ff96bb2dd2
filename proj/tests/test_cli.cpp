#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "oracles.hpp"

using namespace hcont;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hcont-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string corpus(const std::string& name) { return std::string(HCONT_CORPUS_DIR) + "/" + name + ".proof"; }

Run cli(const std::string& args) {
  fs::path o = scratch() / "stdout.txt", e = scratch() / "stderr.txt";
  std::string cmd = std::string("\"") + HCONT_CLI_PATH + "\" " + args + " > \"" + o.string() + "\" 2> \"" + e.string() + "\"";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_text_file(o);
  r.err = read_text_file(e);
  return r;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream o(p, std::ios::binary);
  o << text;
}

}  // namespace

TEST(Cli, CheckSimpleProof) {
  auto r = cli("--format json check " + corpus("drinker-with-cut"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["simple"].get<bool>());
  EXPECT_FALSE(j["weak"].get<bool>());
}

TEST(Cli, CheckRejectsNonSimple) {
  fs::path p = scratch() / "nonsimple.proof";
  write_file(p,
             "(cut (weak (all (or (ax P(α)) 1 0) 0 α (all x (or ~P(x) P(x)))) Q(c))"
             " (or (ex (and (ax P(c)) (ax P(c)) 0 1) 2 c (ex x (and P(x) ~P(x)))) 0 1) 0 0)\n");
  auto r = cli("check " + p.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("simple: no"), std::string::npos);
}

TEST(Cli, ParseErrorExitsTwo) {
  fs::path p = scratch() / "broken.proof";
  write_file(p, "(cont (ax P(c)) 0\n");
  auto r = cli("check " + p.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(cli("reduce " + (scratch() / "missing.proof").string()).code, 2);
}

TEST(Cli, UsageErrorIsNonZero) { EXPECT_NE(cli("no-such-command").code, 0); }

TEST(Cli, ReduceIsDeterministic) {
  fs::path t1 = scratch() / "t1.json", t2 = scratch() / "t2.json";
  auto a = cli("--seed 5 reduce --strategy random --mode full --trace " + t1.string() + " " + corpus("forced-follow-up"));
  auto b = cli("--seed 5 reduce --strategy random --mode full --trace " + t2.string() + " " + corpus("forced-follow-up"));
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(read_text_file(t1), read_text_file(t2));
  auto trace = nlohmann::json::parse(read_text_file(t1));
  ASSERT_TRUE(trace.is_array());
  EXPECT_FALSE(trace.empty());
}

TEST(Cli, ReduceBudgetExitsFour) {
  auto r = cli("--budget 1 reduce " + corpus("forced-follow-up"));
  EXPECT_EQ(r.code, 4);
}

TEST(Cli, ReduceOutputParsesBack) {
  auto r = cli("reduce --mode noerase " + corpus("drinker-with-cut"));
  ASSERT_EQ(r.code, 0) << r.err;
  Proof nf = parse_proof(r.out);
  EXPECT_EQ(nf->conclusion, oracle::corpus_proof("drinker-with-cut")->conclusion);
}

TEST(Cli, ExtractGrammarAndContent) {
  auto g = cli("extract-grammar " + corpus("qcut-two-witnesses"));
  ASSERT_EQ(g.code, 0) << g.err;
  Grammar gr = parse_grammar(g.out);
  EXPECT_EQ(gr, extract_grammar(oracle::corpus_proof("qcut-two-witnesses")));

  auto c = cli("--format json content " + corpus("drinker"));
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(formulas_from_json(nlohmann::json::parse(c.out)), herbrand_content(oracle::corpus_proof("drinker")));
}

TEST(Cli, ContentCapExitsFour) {
  auto r = cli("--cap 1 content " + corpus("qcut-two-witnesses"));
  EXPECT_EQ(r.code, 4);
}

TEST(Cli, SkolemizeDeskolemizeRoundTrip) {
  fs::path sk = scratch() / "sk.proof", map = scratch() / "map.json", cont = scratch() / "skc.json",
           seq = scratch() / "seq.txt";
  ASSERT_EQ(cli("skolemize -o " + sk.string() + " --map " + map.string() + " " + corpus("drinker-with-cut")).code, 0);
  ASSERT_EQ(cli("--format json content -o " + cont.string() + " " + sk.string()).code, 0);
  write_file(seq, "(ex x (or ~P(x) (all y P(y))))\n");
  auto d = cli("--format json desk " + cont.string() + " --map " + map.string() + " --sequent " + seq.string());
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(formulas_from_json(nlohmann::json::parse(d.out)),
            herbrand_content(oracle::corpus_proof("drinker-with-cut")));

  write_file(seq, "(ex x P(x))\n");
  EXPECT_EQ(cli("desk " + cont.string() + " --map " + map.string() + " --sequent " + seq.string()).code, 2);
}

TEST(Cli, DeskolemizeNeedsMap) {
  EXPECT_NE(cli("desk x.json --sequent y.txt").code, 0);
}

TEST(Cli, ConfluenceVerdicts) {
  auto r = cli("--format json confluence --runs 5 " + corpus("qcut-two-witnesses"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "confluent");
  EXPECT_EQ(j["runs"].size(), 5U);

  auto full = cli("--format json confluence --mode full " + corpus("double-contraction"));
  ASSERT_EQ(full.code, 0) << full.err;
  EXPECT_TRUE(nlohmann::json::parse(full.out)["multisets_differ"].get<bool>());

  EXPECT_EQ(cli("--budget 0 confluence " + corpus("qf-cut")).code, 4);
}

TEST(Cli, GeneratorDeterministicAndSimple) {
  for (int seed : {1, 2, 3}) {
    auto a = cli("--seed " + std::to_string(seed) + " generate --shape general");
    auto b = cli("--seed " + std::to_string(seed) + " generate --shape general");
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_TRUE(is_simple(parse_proof(a.out)));
  }
  auto w = cli("--seed 4 generate --shape weak");
  ASSERT_EQ(w.code, 0);
  EXPECT_TRUE(is_weak(parse_proof(w.out)->conclusion));
}

TEST(Cli, GeneratorWithoutCutsIsCutFree) {
  auto r = cli("--seed 9 generate --max-cuts 0 --max-quantified-cuts 0");
  ASSERT_EQ(r.code, 0) << r.err;
  Proof p = parse_proof(r.out);
  bool cut = false;
  for_each_node(p, [&](const Proof& q, const Locator&) { cut = cut || q->rule == Rule::Cut; });
  EXPECT_FALSE(cut);
}

TEST(Cli, PipelineChecks) {
  auto r = cli("pipeline " + corpus("drinker-with-cut"));
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"end_sequent", "grammar", "language", "regular_language", "skolemized", "content", "checks"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_TRUE(j["checks"]["skolemization_commutes"].get<bool>());
  EXPECT_TRUE(j["checks"]["normal_form_content_equal"].get<bool>());
}

TEST(Cli, PipelineCapGivesPartialBundle) {
  auto r = cli("--cap 1 pipeline " + corpus("qcut-two-witnesses"));
  EXPECT_EQ(r.code, 4);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["notices"].empty());
  EXPECT_TRUE(j.contains("grammar"));
}

TEST(Cli, GoldensRegenerateIdentically) {
  for (const auto& e : load_corpus(HCONT_CORPUS_DIR)) {
    auto r = cli("pipeline --golden " + e.proof.string());
    ASSERT_EQ(r.code, 0) << e.name << r.err;
    EXPECT_EQ(r.out, read_text_file(e.golden)) << e.name;
  }
}
