// Copyright 2026 The qchaos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qchaos/cli.hpp"

namespace qchaos::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qchaos-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string &name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"no-such-command"}).code, 2);
  EXPECT_EQ(call({"fixed-points", "--eps", "abc", "--sidecar", path("s.json")}).code, 2);
  EXPECT_EQ(call({"fixed-points", "--unit", "furlong", "--sidecar", path("s.json")}).code, 2);
  const auto r = call({"basin", "--res", "0x4", "--sidecar", path("s.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST_F(CliTest, ComputationErrorsExitOneWithJson) {
  const auto r = call({"critical-purity", "--eps", "10", "--sidecar", path("s.json")});
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.err);
  EXPECT_EQ(j.at("error"), "NoC3");
}

TEST_F(CliTest, FixedPointsReportsC3) {
  const auto r = call({"fixed-points", "--eps", "0", "--unit", "deg", "--no-long-cycles",
                       "--sidecar", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  bool found = false;
  for (const auto &p : j.at("mixed_fixed_points")) {
    if (p.at("role") != "C3") continue;
    found = true;
    EXPECT_NEAR(p.at("location")[0].get<double>(), 0.639, 5e-4);
    EXPECT_NEAR(p.at("location")[2].get<double>(), 0.361, 5e-4);
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(fs::exists(path("s.json")));
}

TEST_F(CliTest, PercentUnitMatchesDegrees) {
  const auto a = call({"critical-purity", "--eps", "5", "--unit", "pct", "--sidecar", path("a.json")});
  const auto b = call({"critical-purity", "--eps", "4.5", "--unit", "deg", "--sidecar", path("b.json")});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_NEAR(json::parse(a.out).at("p_c").get<double>(), json::parse(b.out).at("p_c").get<double>(),
              1e-12);
}

TEST_F(CliTest, OracleCheckPasses) {
  const auto r = call({"oracle-check", "--n", "1000", "--seed", "7", "--sidecar", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_LT(j.at("max_error").get<double>(), 1e-12);
}

TEST_F(CliTest, MonteCarloJsonFields) {
  const auto r = call({"montecarlo", "--eps", "0", "--n", "2000", "--seed", "3", "--sidecar", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  for (const char *k : {"eps", "delta", "purified_pct", "n", "seed"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j.at("delta").get<double>(), 0.0);
}

TEST_F(CliTest, BasinWritesPpmAndCsv) {
  const auto r = call({"basin", "--surface", "plane", "--eps", "0", "--res", "24x16", "--out",
                       path("b.ppm"), "--labels", path("b.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string ppm = slurp(path("b.ppm"));
  const std::string header = "P6\n24 16\n255\n";
  ASSERT_EQ(ppm.substr(0, header.size()), header);
  EXPECT_EQ(ppm.size(), header.size() + 24u * 16u * 3u);
  std::istringstream csv(slurp(path("b.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "x_index,y_index,kind,iterations");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 24 * 16);
  EXPECT_TRUE(fs::exists(path("b.ppm.run.json")));
}

TEST_F(CliTest, SidecarReplayIsByteIdentical) {
  const auto first = call({"basin", "--surface", "sphere", "--purity", "0.95", "--eps", "-4.5",
                           "--res", "40", "--threads", "1", "--out", path("img.ppm"), "--labels",
                           path("lab.csv")});
  ASSERT_EQ(first.code, 0) << first.err;
  const std::string img = slurp(path("img.ppm")), lab = slurp(path("lab.csv"));
  const std::string side = slurp(path("img.ppm.run.json"));
  const json s = json::parse(side);
  EXPECT_EQ(s.at("subcommand"), "basin");
  EXPECT_TRUE(s.contains("version"));
  EXPECT_TRUE(s.at("resolved").contains("--purity"));
  fs::remove(path("img.ppm"));
  fs::remove(path("lab.csv"));
  fs::copy_file(path("img.ppm.run.json"), path("replay.json"));
  const auto again = call({"--replay", path("replay.json")});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(slurp(path("img.ppm")), img);
  EXPECT_EQ(slurp(path("lab.csv")), lab);
  EXPECT_EQ(slurp(path("img.ppm.run.json")), side);
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutput) {
  ASSERT_EQ(call({"basin", "--surface", "sphere", "--eps", "4.5", "--res", "48", "--threads", "1",
                  "--out", path("a.ppm")})
                .code,
            0);
  ASSERT_EQ(call({"basin", "--surface", "sphere", "--eps", "4.5", "--res", "48", "--threads", "4",
                  "--out", path("b.ppm")})
                .code,
            0);
  EXPECT_EQ(slurp(path("a.ppm")), slurp(path("b.ppm")));
}

TEST_F(CliTest, ReplayRejectsExtraArguments) {
  EXPECT_EQ(call({"--replay", path("x.json"), "fixed-points"}).code, 2);
  EXPECT_EQ(call({"--replay", path("missing.json")}).code, 2);
}

TEST_F(CliTest, ScanEmitsCurve) {
  const auto r = call({"scan", "--eps", "0", "--purities", "0.9:1.0:0.05", "--res", "64", "--out",
                       path("c.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(path("c.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "P,d,stderr,fit_r2");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, VersionAndHelp) {
  const auto v = call({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, std::string(version()) + "\n");
  EXPECT_EQ(call({"--help"}).code, 0);
}

}  // namespace
}  // namespace qchaos::cli
