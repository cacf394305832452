#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using solvloop::cli::Json;
using solvloop::cli::run_command;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

Json parsed(const CliRun& r) { return Json::parse(r.out); }

}  // namespace

TEST(Cli, ClassifyExample) {
  const CliRun r = run({"classify", "--a", "2", "--b1", "1", "--b2", "0", "--b3", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parsed(r);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["result"]["class"], "H1");
  EXPECT_EQ(j["status"], "pass");
}

TEST(Cli, Theorem2Example) {
  const CliRun r = run({"theorem2", "--a", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parsed(r)["result"]["contradiction"], true);
}

TEST(Cli, DegenerateLoopPassesWithGenerationWarning) {
  const CliRun r = run({"loop-check", "--case", "A", "--a", "2", "--fn", "x*z", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = parsed(r);
  EXPECT_EQ(j["status"], "warn");
  EXPECT_EQ(j["seed"], 7);
  bool warned = false;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "generation") warned = c["status"] == "warn";
    else EXPECT_EQ(c["status"], "pass") << c["name"];
  }
  EXPECT_TRUE(warned);
}

TEST(Cli, FailingReportExitsOne) {
  const CliRun r = run({"lemma1", "--fn", "2*(1-exp(-z))+0.01*z^2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(parsed(r)["status"], "fail");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"loop-check", "--case", "A", "--a", "2", "--fn", "x + "}).code, 2);
  EXPECT_EQ(run({"loop-check", "--case", "B", "--a", "1", "--preset", "zero"}).code, 2);
  EXPECT_EQ(run({"loop-check", "--case", "A", "--a", "2", "--fn", "x + 1"}).code, 2);
  EXPECT_EQ(run({"loop-check", "--case", "D", "--a", "2", "--preset", "zero"}).code, 2);
  EXPECT_EQ(run({"loop-check", "--case", "A", "--a", "0", "--preset", "zero"}).code, 2);
  EXPECT_EQ(run({"fixed-point", "--a", "2", "--g", "1,2,3,0"}).code, 2);
  const CliRun e = run({"loop-check", "--case", "A", "--a", "2", "--fn", "x + "});
  EXPECT_NE(e.err.find("position 4"), std::string::npos);
}

TEST(Cli, ReportFormat) {
  const CliRun r = run({"fixed-point", "--a", "1", "--g", "1,0,0,0.6931471805599453"});
  ASSERT_EQ(r.code, 0);
  const Json j = parsed(r);
  const std::vector<std::string> keys{"schema", "command", "config", "status", "seed", "checks",
                                      "result"};
  std::vector<std::string> got;
  for (auto it = j.begin(); it != j.end(); ++it) got.push_back(it.key());
  EXPECT_EQ(got, keys);
  EXPECT_NEAR(j["result"]["witness"][0].get<double>(), -1, 1e-12);
  // 17 significant digits.
  EXPECT_NE(r.out.find("0.69314718055994529"), std::string::npos);
  EXPECT_EQ(r.out.find("wall_time"), std::string::npos);
}

TEST(Cli, EmptyCheckListAndNonFinite) {
  Json j;
  j["checks"] = Json::array();
  j["x"] = std::numeric_limits<double>::infinity();
  const std::string text = solvloop::cli::to_json_text(j);
  const Json back = Json::parse(text);
  EXPECT_TRUE(back["checks"].is_array());
  EXPECT_TRUE(back["x"].is_null());
}

TEST(Cli, DeterministicAndWritesFile) {
  const std::string path = ::testing::TempDir() + "solvloop_report.json";
  const std::vector<std::string> args{"transitivity", "--case", "C", "--a", "2",
                                      "--preset", "sin-small", "--samples", "20",
                                      "--seed", "5", "--out", path};
  ASSERT_EQ(run(args).code, 0);
  std::ifstream f1(path);
  const std::string first((std::istreambuf_iterator<char>(f1)), {});
  ASSERT_EQ(run(args).code, 0);
  std::ifstream f2(path);
  const std::string second((std::istreambuf_iterator<char>(f2)), {});
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, second);
  std::remove(path.c_str());

  const CliRun timed = run({"theorem2", "--a", "2", "--timing"});
  EXPECT_NE(timed.out.find("wall_time_s"), std::string::npos);
}

TEST(Cli, UnwritableOutput) {
  EXPECT_EQ(run({"theorem2", "--a", "2", "--out", "/nonexistent-dir/x.json"}).code, 2);
}
