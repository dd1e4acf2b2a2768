#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "relabel/convert.hpp"
#include "relabel/stats.hpp"

namespace {

using namespace relabel;

std::string fixture_path(const std::string& name) {
  return std::string(RELABEL_FIXTURE_DIR) + "/" + name;
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in.good()) << path;
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_bytes(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

std::string scratch(const std::string& name) {
  return ::testing::TempDir() + name;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the tool through the shell; `prefix` can set environment variables.
RunResult run_cli(const std::string& args, const std::string& prefix = "") {
  std::string out_path = scratch("cli_stdout");
  std::string err_path = scratch("cli_stderr");
  std::string command = prefix + " " + std::string(RELABEL_CLI_PATH) + " " +
                        args + " > " + out_path + " 2> " + err_path;
  int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(status);
  result.out = read_bytes(out_path);
  result.err = read_bytes(err_path);
  return result;
}

TEST(CliTest, ConvertMatchesLibraryOutput) {
  std::string out_path = scratch("fgd_converted.conllu");
  auto run = run_cli("convert --from fgd --in " +
                     fixture_path("fgd_corpus.conllu") + " --out " +
                     out_path);
  ASSERT_EQ(run.exit_code, 0) << run.err;
  EXPECT_TRUE(run.out.empty());

  Document doc = parse_file(fixture_path("fgd_corpus.conllu"));
  ConvertConfig cfg;
  cfg.framework = Framework::Fgd;
  ConvertReport report = Converter(cfg).convert_document(doc);
  EXPECT_EQ(read_bytes(out_path), serialize(doc));

  auto parsed = nlohmann::json::parse(run.err);
  EXPECT_EQ(parsed["labeled"], report.labeled);
  EXPECT_EQ(parsed["sentences"], 56);
  EXPECT_EQ(parsed["passthrough"], 0);
}

TEST(CliTest, ConvertIsDeterministicOnStdout) {
  std::string args = "convert --from ancora --in " +
                     fixture_path("ancora_corpus.conllu") + " --out -";
  auto first = run_cli(args);
  auto second = run_cli(args);
  ASSERT_EQ(first.exit_code, 0) << first.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_FALSE(first.out.empty());

  std::string out_path = scratch("ancora_converted.conllu");
  auto filed = run_cli("convert --from ancora --in " +
                       fixture_path("ancora_corpus.conllu") + " --out " +
                       out_path);
  ASSERT_EQ(filed.exit_code, 0);
  EXPECT_EQ(read_bytes(out_path), first.out);
}

TEST(CliTest, JobsKeepOrderAndBytes) {
  std::string serial = scratch("jobs1.conllu");
  std::string parallel = scratch("jobs4.conllu");
  auto one = run_cli("convert --from fgd --jobs 1 --in " +
                     fixture_path("fgd_corpus.conllu") + " --out " + serial);
  auto four = run_cli("convert --from fgd --jobs 4 --in " +
                      fixture_path("fgd_corpus.conllu") + " --out " +
                      parallel);
  ASSERT_EQ(one.exit_code, 0);
  ASSERT_EQ(four.exit_code, 0);
  EXPECT_EQ(read_bytes(serial), read_bytes(parallel));
  EXPECT_EQ(one.err, four.err);
}

TEST(CliTest, ValidateFindingsAndExitCodes) {
  auto bad = run_cli("validate --in " + fixture_path("graph_multi_root.conllu"));
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.out.find("ERROR MULTIPLE_ROOTS sent=graph-multiroot-1 node=-"),
            std::string::npos);
  EXPECT_NE(bad.err.find("1 errors"), std::string::npos);

  auto clean = run_cli("validate --in " + fixture_path("graph_clean_chain.conllu"));
  EXPECT_EQ(clean.exit_code, 0);
  EXPECT_TRUE(clean.out.empty());

  auto warned = run_cli("validate --format json --in " +
                        fixture_path("graph_nonref_cycle.conllu"));
  EXPECT_EQ(warned.exit_code, 0);
  auto parsed = nlohmann::json::parse(warned.out);
  ASSERT_EQ(parsed.size(), 1u);
  EXPECT_EQ(parsed[0]["code"], "UNEXPECTED_CYCLE");
  EXPECT_EQ(parsed[0]["severity"], "WARNING");
}

TEST(CliTest, StatsFormats) {
  auto tsv = run_cli("stats --key Functor --in " +
                     fixture_path("fgd_corpus.conllu"));
  ASSERT_EQ(tsv.exit_code, 0);
  EXPECT_EQ(tsv.out, read_bytes(fixture_path("fgd_corpus.golden.tsv")));

  auto json = run_cli("stats --key ArgTem --format json --in " +
                      fixture_path("ancora_corpus.conllu"));
  ASSERT_EQ(json.exit_code, 0);
  auto parsed = nlohmann::json::parse(json.out);
  EXPECT_EQ(parsed[0]["label"], "arg1:pat");
  EXPECT_EQ(parsed[0]["count"], 16);

  auto md = run_cli("stats --key Functor --format markdown --in " +
                    fixture_path("fgd_corpus.conllu"));
  ASSERT_EQ(md.exit_code, 0);
  EXPECT_EQ(md.out.rfind("| label | count |", 0), 0u);
}

TEST(CliTest, RoundtripCleanAndTampered) {
  std::string converted = scratch("roundtrip.conllu");
  ASSERT_EQ(run_cli("convert --from fgd --in " +
                    fixture_path("fgd_corpus.conllu") + " --out " + converted)
                .exit_code,
            0);

  for (const char* mode : {"a", "b"}) {
    auto clean = run_cli("roundtrip --from fgd --mode " + std::string(mode) +
                         " --in " + converted);
    EXPECT_EQ(clean.exit_code, 0) << clean.out;
    EXPECT_TRUE(clean.out.empty());
    EXPECT_NE(clean.err.find("0 losses"), std::string::npos);
  }

  std::string tampered = read_bytes(converted);
  auto pos = tampered.find("DeepRel=TIME:when");
  ASSERT_NE(pos, std::string::npos);
  tampered.replace(pos, 17, "DeepRel=LOC:where");
  std::string edited = scratch("roundtrip_edited.conllu");
  write_bytes(edited, tampered);

  auto caught = run_cli("roundtrip --from fgd --mode a --in " + edited);
  EXPECT_EQ(caught.exit_code, 1);
  EXPECT_NE(caught.out.find("ROUNDTRIP_A_MISMATCH"), std::string::npos);
}

TEST(CliTest, TableExports) {
  auto fgd = run_cli("table --format tsv");
  ASSERT_EQ(fgd.exit_code, 0);
  std::size_t lines = 0;
  for (char c : fgd.out) lines += c == '\n';
  EXPECT_EQ(lines, 71u);  // header + 67 mapped + 3 unmapped extras
  EXPECT_EQ(fgd.out.rfind("functor\tlabel\tprovenance\n", 0), 0u);
  EXPECT_NE(fgd.out.find("NE\t_\tpcedt-extra"), std::string::npos);

  auto ancora = run_cli("table --from ancora --format tsv");
  ASSERT_EQ(ancora.exit_code, 0);
  lines = 0;
  for (char c : ancora.out) lines += c == '\n';
  EXPECT_EQ(lines, 24u);  // header + 23 builtin rules

  auto taxonomy = run_cli("table --what taxonomy --format json");
  ASSERT_EQ(taxonomy.exit_code, 0);
  auto parsed = nlohmann::json::parse(taxonomy.out);
  EXPECT_EQ(parsed.size(), 14u);
  EXPECT_EQ(parsed["TIME"].size(), 9u);

  std::string override_path = scratch("cli_override.tsv");
  write_bytes(override_path, "TWHEN\tACT:exp\tcustom\n");
  auto overridden =
      run_cli("table --format tsv --override " + override_path);
  ASSERT_EQ(overridden.exit_code, 0);
  EXPECT_NE(overridden.out.find("TWHEN\tACT:exp\tcustom"),
            std::string::npos);
}

TEST(CliTest, CompareModesAndDrift) {
  auto equal = run_cli("compare --key Functor --golden " +
                       fixture_path("fgd_corpus.golden.tsv") + " --in " +
                       fixture_path("fgd_corpus.conllu"));
  EXPECT_EQ(equal.exit_code, 0);
  EXPECT_EQ(equal.out, "label\texpected\tactual\tdelta\n");

  std::string doctored = scratch("doctored.golden.tsv");
  std::string golden = read_bytes(fixture_path("fgd_corpus.golden.tsv"));
  auto pos = golden.find("PRED\t60");
  ASSERT_NE(pos, std::string::npos);
  golden.replace(pos, 7, "PRED\t61");
  write_bytes(doctored, golden);

  auto drifted = run_cli("compare --key Functor --golden " + doctored +
                         " --in " + fixture_path("fgd_corpus.conllu"));
  EXPECT_EQ(drifted.exit_code, 1);
  EXPECT_NE(drifted.out.find("PRED\t61\t60\t-1"), std::string::npos);

  auto reported = run_cli("compare --mode report --key Functor --golden " +
                          doctored + " --in " +
                          fixture_path("fgd_corpus.conllu"));
  EXPECT_EQ(reported.exit_code, 0);
  EXPECT_NE(reported.out.find("PRED\t61\t60\t-1"), std::string::npos);
}

TEST(CliTest, ConfigFileAndEnvVar) {
  std::string config = scratch("relabel.toml");
  write_bytes(config,
              "[convert]\n"
              "framework = \"fgd\"\n"
              "policy = \"strict\"\n"
              "keep_src = false\n");
  std::string input = scratch("ne.conllu");
  write_bytes(input, "1\trun\trun\tVERB\t_\t_\t0\troot\t0:root\tFunctor=NE\n\n");

  auto via_flag =
      run_cli("--config " + config + " convert --in " + input + " --out -");
  EXPECT_EQ(via_flag.exit_code, 1);
  EXPECT_NE(via_flag.err.find("no mapping for functor \"NE\""),
            std::string::npos);

  auto via_env = run_cli("convert --in " + input + " --out -",
                         "RELABEL_CONFIG=" + config);
  EXPECT_EQ(via_env.exit_code, 1);

  auto overridden = run_cli("convert --policy fallback --in " + input +
                            " --out -", "RELABEL_CONFIG=" + config);
  EXPECT_EQ(overridden.exit_code, 0);
  EXPECT_NE(overridden.out.find("DeepRel=MISCLL"), std::string::npos);
  EXPECT_EQ(overridden.out.find("DeepRelSrc"), std::string::npos);
}

TEST(CliTest, UsageAndIoErrors) {
  EXPECT_EQ(run_cli("bogus").exit_code, 2);
  EXPECT_EQ(run_cli("convert --bogus").exit_code, 2);
  EXPECT_EQ(run_cli("convert --from nope --in - --out -").exit_code, 2);
  EXPECT_EQ(run_cli("compare --in -").exit_code, 2);
  EXPECT_EQ(run_cli("stats --in /nonexistent.conllu").exit_code, 3);

  std::string malformed = scratch("broken.conllu");
  write_bytes(malformed, "1\tonly\tthree\n\n");
  auto broken = run_cli("validate --in " + malformed);
  EXPECT_EQ(broken.exit_code, 3);
  EXPECT_NE(broken.err.find("line 1"), std::string::npos);
}

TEST(CliTest, StdinToStdoutPipeline) {
  std::string input = scratch("pipe_in.conllu");
  write_bytes(input,
              "1\tcorre\tcorrer\tVERB\t_\t_\t0\troot\t0:root\t"
              "ArgTem=arg0:agt\n\n");
  auto piped = run_cli("convert --from ancora --in - --out - < " + input);
  ASSERT_EQ(piped.exit_code, 0);
  EXPECT_NE(piped.out.find("DeepRel=ACT:agt"), std::string::npos);
}

}  // namespace
