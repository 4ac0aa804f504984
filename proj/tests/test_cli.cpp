// End-to-end checks of the installed binary: report streams, formats,
// output routing, config/flag precedence, exit codes, and reproducibility.

#include <minentlab/config.hpp>
#include <minentlab/runner.hpp>

#include "gtest/gtest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + MINENTLAB_CLI_PATH + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  CliResult result;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
  const int status = pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::string write_temp(const std::string& contents) {
  char path[] = "/tmp/minentlab_cli_XXXXXX";
  const int fd = mkstemp(path);
  EXPECT_GE(fd, 0);
  FILE* f = fdopen(fd, "w");
  std::fputs(contents.c_str(), f);
  std::fclose(f);
  return std::string(path);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

using minentlab::Json;

TEST(Cli, BellReportStream) {
  const CliResult r = run_cli("minent --state bell");
  EXPECT_EQ(r.code, 0);
  const std::vector<std::string> lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u);
  const Json duality = Json::parse(lines[0]);
  EXPECT_EQ(duality["name"], "minent-duality");
  EXPECT_NEAR(duality["lhs"].get<double>(), 2.0, 1e-6);
  EXPECT_TRUE(duality["pass"].get<bool>());
  EXPECT_EQ(Json::parse(lines[1])["name"], "minent-schmidt-oracle");
}

TEST(Cli, ClassicalSuiteAtFullSize) {
  const CliResult r = run_cli("verify classical --suite random-tables --n 1000 --seed 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines_of(r.out).size(), 3000u);
}

TEST(Cli, SingleChannelVerification) {
  const CliResult r = run_cli("verify thm1 --partition-size 2 --channel depolarizing:0.5");
  EXPECT_EQ(r.code, 0);
  const std::vector<std::string> lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 1u);
  const Json report = Json::parse(lines[0]);
  EXPECT_EQ(report["name"], "recovery-vs-conditional-entropy");
  EXPECT_TRUE(report["pass"].get<bool>());
}

TEST(Cli, CsvFormat) {
  const CliResult r = run_cli("minent --state bell --format csv");
  EXPECT_EQ(r.code, 0);
  const std::vector<std::string> lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], std::string(minentlab::kCsvHeader));
}

TEST(Cli, OutputFileIsByteReproducible) {
  const std::string a = write_temp("");
  const std::string b = write_temp("");
  const std::string args = "minent --state pure-random --dim 3 --count 5 --seed 31 --out ";
  EXPECT_EQ(run_cli(args + a).code, 0);
  EXPECT_EQ(run_cli(args + b).code, 0);
  const std::string first = slurp(a);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, slurp(b));
  // A single worker must not change a single byte.
  EXPECT_EQ(run_cli(args + b, "MINENTLAB_THREADS=1").code, 0);
  EXPECT_EQ(first, slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(Cli, FlagsOverrideConfigFile) {
  const std::string config = write_temp(
      "{\"schema\":1,\"command\":\"minent\",\"seed\":3,\"params\":{\"state\":\"bell\"}}");
  const CliResult r = run_cli("minent --config " + config + " --seed 9");
  EXPECT_EQ(r.code, 0);
  const std::vector<std::string> lines = lines_of(r.out);
  ASSERT_FALSE(lines.empty());
  EXPECT_EQ(Json::parse(lines[0])["seed"].get<std::uint64_t>(), 9u);
  std::remove(config.c_str());
}

TEST(Cli, ConfigAndUsageErrorsExitTwo) {
  const std::string broken = write_temp("not json at all");
  EXPECT_EQ(run_cli("minent --config " + broken).code, 2);
  std::remove(broken.c_str());
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("minent --warp 9").code, 2);
  EXPECT_EQ(run_cli("verify").code, 2);
  EXPECT_EQ(run_cli("verify classical --suite bogus --seed 1").code, 2);
  EXPECT_EQ(run_cli("minent --tol 1e-12").code, 2);
}

TEST(Cli, FailingReportExitsOne) {
  const CliResult r = run_cli("simulate --samples 1 --seed 2");
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(lines_of(r.out).empty());  // failing reports are still written
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run_cli("--help").code, 0);
  EXPECT_EQ(run_cli("verify --help").code, 0);
}
