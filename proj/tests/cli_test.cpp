#include "qbaf/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qbaf/fixtures.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = qbaf::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path, std::ios::binary);
  f << text;
  return path.string();
}

TEST(Cli, ValidateFixtureByName) {
  CliResult r = run_cli({"validate", "fakenews"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "ok: 8 arguments, 5 attacks, 2 supports, topic A\n");
}

TEST(Cli, ValidateFileOnDisk) {
  std::string path =
      write_temp("qbaf_cli_running.json", qbaf::fixtures::document("running"));
  CliResult r = run_cli({"validate", path});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "ok: 6 arguments, 4 attacks, 2 supports, topic A\n");
}

TEST(Cli, ValidateCyclicFileFails) {
  std::string path = write_temp(
      "qbaf_cli_cycle.json",
      R"({"arguments": [{"id": "A", "base_score": 0.5},
                        {"id": "B", "base_score": 0.5}],
          "attacks": [["A", "B"], ["B", "A"]]})");
  CliResult r = run_cli({"validate", path});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("CycleDetected"), std::string::npos);
}

TEST(Cli, ValidateMissingFile) {
  CliResult r = run_cli({"validate", "/nonexistent/nowhere.json"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("neither a readable file nor a bundled fixture"),
            std::string::npos);
}

TEST(Cli, EvalPrintsStrengthsAndAggregates) {
  CliResult r = run_cli({"eval", "running"});
  EXPECT_EQ(r.exit_code, 0);
  auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "argument\tsigma\tv_a\tv_s");
  EXPECT_EQ(lines[1], "A\t0.37500\t0.37500\t0.12500");
  EXPECT_EQ(lines[6], "G\t0.12500\t0.75000\t0.00000");
}

TEST(Cli, EvalFraudReferenceIsAnError) {
  CliResult r = run_cli({"eval", "fraud-reference"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("cannot be evaluated"), std::string::npos);
}

TEST(Cli, AttributeMatchesPublishedRanking) {
  CliResult r = run_cli({"attribute", "fakenews", "--topic", "A"});
  EXPECT_EQ(r.exit_code, 0);
  std::vector<std::string> expected = {
      "C\t0.37500", "B\t0.12500", "F\t0.06250",  "G\t-0.06250",
      "H\t-0.06250", "E\t-0.12500", "D\t-0.43750"};
  EXPECT_EQ(lines_of(r.out), expected);
}

TEST(Cli, AttributeMethodsAgreeAtPrintedPrecision) {
  CliResult reverse = run_cli({"attribute", "fakenews", "--topic", "A"});
  CliResult analytic =
      run_cli({"attribute", "fakenews", "--topic", "A", "--method", "analytic"});
  CliResult fd = run_cli({"attribute", "fakenews", "--topic", "A", "--method",
                          "fd", "--epsilon", "1e-6"});
  EXPECT_EQ(reverse.out, analytic.out);
  EXPECT_EQ(reverse.out, fd.out);
}

TEST(Cli, AttributeUsesDocumentTopicWhenFlagOmitted) {
  CliResult r = run_cli({"attribute", "movie"});
  EXPECT_EQ(r.exit_code, 0);
  auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "Acting\t0.17626");
  EXPECT_EQ(lines[4], "Writing\t-0.21000");
}

TEST(Cli, AttributeWithoutAnyTopicFails) {
  std::string path = write_temp(
      "qbaf_cli_nt.json",
      R"({"arguments": [{"id": "A", "base_score": 0.5}]})");
  for (const char* cmd : {"attribute", "rank", "check", "export-dot"}) {
    CliResult r = run_cli({cmd, path});
    EXPECT_EQ(r.exit_code, 1) << cmd;
    EXPECT_NE(r.err.find("names none"), std::string::npos) << cmd;
  }
}

TEST(Cli, RankEmitsCsv) {
  CliResult r = run_cli({"rank", "fakenews", "--topic", "A"});
  EXPECT_EQ(r.exit_code, 0);
  auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 8u);
  EXPECT_EQ(lines[0], "argument,tau,ablated_strength,delta,aae,aae_exact");
  EXPECT_EQ(lines[1], "C,0.50000,0.40625,-0.18750,0.37500,0.375");
  EXPECT_EQ(lines[7], "D,0.50000,0.81250,0.21875,-0.43750,-0.4375");
}

TEST(Cli, RankWritesOutFile) {
  auto path = std::filesystem::temp_directory_path() / "qbaf_cli_rank.csv";
  std::filesystem::remove(path);
  CliResult r =
      run_cli({"rank", "fakenews", "--topic", "A", "--out", path.string()});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  EXPECT_EQ(buffer.str(), run_cli({"rank", "fakenews", "--topic", "A"}).out);
}

TEST(Cli, CheckFakenewsPasses) {
  CliResult r = run_cli({"check", "fakenews", "--topic", "A"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("0 failures under direct/indirect"), std::string::npos);
}

TEST(Cli, CheckCounterexamplesReportMultifoldInformationally) {
  for (const char* name : {"cx-complete", "cx-agree", "cx-invar"}) {
    CliResult r = run_cli({"check", name, "--topic", "A"});
    EXPECT_EQ(r.exit_code, 0) << name;
    EXPECT_NE(r.out.find("fail*"), std::string::npos) << name;
    EXPECT_NE(r.out.find("0 failures under direct/indirect"),
              std::string::npos)
        << name;
  }
}

TEST(Cli, CheckMovieReportsDirectInvariabilityBreak) {
  // Writing's attribution is tau(m)-1 on one side of the aggregate tie and
  // -tau(m) on the other, so constancy over the whole [0,1] sweep genuinely
  // fails for this direct source; the checker reports it and exits nonzero.
  CliResult r = run_cli({"check", "movie", "--topic", "m"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.out.find("FAIL\tquantitative-invariability\tWriting"),
            std::string::npos);
}

TEST(Cli, ExportDotRuns) {
  CliResult r = run_cli({"export-dot", "fakenews", "--topic", "A"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("digraph qbaf {", 0), 0u);
  EXPECT_NE(r.out.find("style=dashed"), std::string::npos);
}

TEST(Cli, FixturesListAndEmit) {
  CliResult list = run_cli({"fixtures", "--list"});
  EXPECT_EQ(list.exit_code, 0);
  EXPECT_EQ(lines_of(list.out).size(), 7u);
  EXPECT_EQ(lines_of(list.out)[0], "fakenews");

  CliResult emit = run_cli({"fixtures", "--emit", "running"});
  EXPECT_EQ(emit.exit_code, 0);
  EXPECT_EQ(emit.out, qbaf::fixtures::document("running"));

  EXPECT_EQ(run_cli({"fixtures", "--emit", "nope"}).exit_code, 1);
  EXPECT_EQ(run_cli({"fixtures"}).exit_code, 2);
  EXPECT_EQ(run_cli({"fixtures", "--list", "--emit", "running"}).exit_code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"no-such-command"}).exit_code, 2);
  EXPECT_EQ(run_cli({"attribute"}).exit_code, 2);  // missing file
  EXPECT_EQ(run_cli({"attribute", "fakenews", "--method", "sideways"}).exit_code,
            2);
  EXPECT_EQ(run_cli({}).exit_code, 2);
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run_cli({"--help"}).exit_code, 0);
  EXPECT_EQ(run_cli({"attribute", "--help"}).exit_code, 0);
}

TEST(Cli, DeterministicBytes) {
  for (auto args : {std::vector<std::string>{"rank", "fakenews", "--topic", "A"},
                    std::vector<std::string>{"eval", "movie"},
                    std::vector<std::string>{"export-dot", "running",
                                             "--topic", "A"}}) {
    CliResult first = run_cli(args);
    CliResult second = run_cli(args);
    EXPECT_EQ(first.out, second.out);
    EXPECT_EQ(first.exit_code, second.exit_code);
  }
}

}  // namespace
