#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(CSM_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::size_t k = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), k);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args) {
  Outcome r = run(args + " --json");
  EXPECT_EQ(r.status, 0) << args;
  return nlohmann::json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, CsmJsonOnQuadric) {
  auto j = run_json("csm quadric --seed 5");
  EXPECT_EQ(j["csm"], nlohmann::json({0, 2, 4, 4}));
  EXPECT_EQ(j["euler"], 4);
  EXPECT_EQ(j["profile"], nlohmann::json({4, 2, 2}));
  EXPECT_EQ(j["seed"], 5);
  for (const char* key : {"algorithm", "ms"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, SeedMakesRunsReproducible) {
  auto a = run_json("segre s52_V2 --seed 77");
  auto b = run_json("segre s52_V2 --seed 77");
  EXPECT_EQ(a["segre"], b["segre"]);
  EXPECT_EQ(a["segre"], nlohmann::json({0, 0, 9, 54, -1944}));
}

TEST(Cli, EulerPrintsSingleNumber) {
  Outcome r = run("euler nodal --seed 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "1\n");
}

TEST(Cli, ProjdegGradient) {
  auto j = run_json("projdeg cusp --gradient --seed 3");
  EXPECT_EQ(j["projdeg"], nlohmann::json({1, 2, 2}));
}

TEST(Cli, ParseErrorsExitWithTwo) {
  EXPECT_EQ(run("csm " + temp_file("csm_bad.ideal", "ring p=32749 vars=x0,x1\nideal:\nx0 +\n")).status, 2);
  EXPECT_EQ(run("csm quadric --no-such-flag").status, 2);
  EXPECT_EQ(run("csm quadric --saturation sometimes").status, 2);
}

TEST(Cli, PreconditionFailureExitsWithThree) {
  EXPECT_EQ(run("csm t41_V8 --algorithm direct --seed 1").status, 3);
}

TEST(Cli, TimeoutExitsWithFive) {
  EXPECT_EQ(run("csm s52_V1 --algorithm incl-excl --timeout-s 0.001 --seed 1").status, 5);
}

TEST(Cli, ProbboundJson) {
  auto j = run_json("probbound --n 2 --m 1 --d 2 --codim 1");
  EXPECT_EQ(j["D"], "144");
  EXPECT_EQ(j["per_degree"].size(), 2u);
  EXPECT_TRUE(j["segre_bound"].contains("exact"));
}

TEST(Cli, StressWithZeroTrials) {
  auto j = run_json("stress quadric --trials 0 --seed 2");
  EXPECT_EQ(j["trials"], 0);
  EXPECT_EQ(j["failures"], 0);
}

TEST(Cli, StressCountsMismatchesAgainstWrongExpectation) {
  auto j = run_json("stress s52_V3 --trials 3 --expected [0,0,0,0,0] --seed 2");
  EXPECT_EQ(j["failures"], 3);
}

TEST(Cli, BenchReportsAgreement) {
  Outcome r = run("bench quadric cusp --algorithms hybrid,incl-excl --seed 4 --json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["agreement_failure"].get<bool>()) << r.out;
  EXPECT_EQ(j["rows"].size(), 2u);
}
