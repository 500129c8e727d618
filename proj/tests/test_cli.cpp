#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "vtask/cli.hpp"
#include "vtask/meta_gen.hpp"
#include "vtask/text_util.hpp"

namespace vtask {
namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  CliRun r;
  r.code = run_cli(args, out, err, &in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"generate"}).code, kExitUsage);  // --plan is required
  EXPECT_EQ(run({"report", "--format", "html"}).code, kExitUsage);
}

TEST(Cli, HelpDocumentsEveryFlag) {
  const CliRun top = run({"--help"});
  EXPECT_EQ(top.code, kExitOk);
  for (const char* flag : {"--seed", "--out-dir", "--jobs", "--data-dir", "--config", "--version"}) {
    EXPECT_NE(top.out.find(flag), std::string::npos) << flag;
  }
  const CliRun gen = run({"generate", "--help"});
  EXPECT_EQ(gen.code, kExitOk);
  EXPECT_NE(gen.out.find("--plan"), std::string::npos);
  for (const GenConfigField& f : gen_config_fields()) {
    EXPECT_NE(gen.out.find("--" + std::string(f.name)), std::string::npos) << f.name;
  }
  const std::pair<const char*, std::vector<const char*>> subcommands[] = {
      {"split", {"--corpus", "--train-fraction"}},
      {"export", {"--corpus", "--splits", "--sentinel", "--shuffle", "--output"}},
      {"translate", {"--held-out", "--corpus", "--splits", "--output"}},
      {"evaluate", {"--corpus", "--predictions", "--splits", "--templates", "--output"}},
      {"report", {"--records", "--format", "--output"}},
  };
  for (const auto& [name, flags] : subcommands) {
    const CliRun help = run({name, "--help"});
    EXPECT_EQ(help.code, kExitOk) << name;
    for (const char* flag : flags) EXPECT_NE(help.out.find(flag), std::string::npos) << name << " " << flag;
  }
}

TEST(Cli, TranslateFromStdin) {
  const CliRun r = run({"translate"}, "Put the result of `a' nand `b' in `c'.");
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "assign c = !(a & b);\n");
}

TEST(Cli, NoMatchIsDataError) {
  const CliRun r = run({"translate"}, "hello world");
  EXPECT_EQ(r.code, kExitData);
  EXPECT_EQ(r.err.rfind("error:no_match: ", 0), 0u) << r.err;
}

TEST(Cli, LintDiagnostics) {
  const CliRun bad = run({"lint", "-"}, "reg q;\nq <= a;");
  EXPECT_EQ(bad.code, kExitData);
  EXPECT_EQ(bad.out, "<stdin>:2:1: placement: procedural assignment to 'q' outside an always block\n");
  const CliRun ok = run({"lint", "-"}, "assign c = a & b;");
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_EQ(ok.out, "<stdin>: ok\n");
}

TEST(Cli, MissingFileIsDataError) {
  const CliRun r = run({"lint", "/nonexistent/x.v"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_EQ(r.err.rfind("error:io: ", 0), 0u) << r.err;
}

TEST(Cli, FullPipeline) {
  testing::TempDir dir("cli");
  const std::string d = dir.path().string();
  write_text_file(dir.path() / "plan.txt", "pa00 = 20\npg01 = 20\nda03 = 4\nmt00 = 10\n");
  CliRun r = run({"--out-dir", d, "generate", "--plan", d + "/plan.txt"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = run({"--out-dir", d, "split"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("validate 3"), std::string::npos) << r.out;
  r = run({"--out-dir", d, "export"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = run({"--out-dir", d, "translate", "--corpus", d, "--held-out"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = run({"--out-dir", d, "evaluate"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "Overall: 100.000% (7/7)\n");
  r = run({"--out-dir", d, "report", "--format", "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("pa00"), std::string::npos);

  write_text_file(dir.path() / "predictions.jsonl", "");
  r = run({"--out-dir", d, "evaluate"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_EQ(r.err.rfind("error:missing_predictions: ", 0), 0u) << r.err;
}

TEST(Cli, ConfigFileMapsToFlags) {
  testing::TempDir dir("cli-config");
  const std::string d = dir.path().string();
  write_text_file(dir.path() / "plan.txt", "pr00 = 30\n");
  write_text_file(dir.path() / "run.toml",
                  "seed = 7\nout-dir = \"" + d + "\"\n[generate]\nplan = \"" + d +
                      "/plan.txt\"\np_reset = 1.0\n");
  CliRun r = run({"--config", d + "/run.toml", "generate"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string manifest = read_text_file(dir.path() / "manifest.json");
  EXPECT_NE(manifest.find("\"seed\": 7"), std::string::npos) << manifest;
  EXPECT_NE(manifest.find("\"p_reset\": 1.0"), std::string::npos) << manifest;
}

TEST(Cli, InvalidGenConfigIsDataError) {
  testing::TempDir dir("cli-gen");
  const std::string d = dir.path().string();
  write_text_file(dir.path() / "plan.txt", "pa00 = 1\n");
  const CliRun r = run({"--out-dir", d, "generate", "--plan", d + "/plan.txt", "--seq_len_min", "9"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_EQ(r.err.rfind("error:config: ", 0), 0u) << r.err;
}

}  // namespace
}  // namespace vtask
