// Copyright 2026 The Nucleo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nucleo/cli.hpp"
#include "nucleo/io.hpp"

namespace nucleo::cli {
namespace {

namespace fs = std::filesystem;

const std::string kData = NUCLEO_DATA_DIR;
const std::string kGolden = NUCLEO_GOLDEN_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return io::read_file(kGolden + "/" + name); }

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nucleo_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  fs::path dir_;
};

TEST(Cli, VerifyProposedSolutionFailsCore) {
  CliRun r = run({"verify", kData + "/flow10.json", "--solution", kData + "/xstar2.json", "--checks", "core"});
  EXPECT_EQ(r.code, kFail);
  EXPECT_NE(r.out.find("check core: FAIL (10 blocking coalitions)"), std::string::npos);
  EXPECT_NE(r.out.find("{1,4,5,8,10} excess 1/5"), std::string::npos);
  EXPECT_EQ(r.out, golden("verify_xstar2_core.txt"));
}

TEST(Cli, SolvePrintsNucleolus) {
  CliRun r = run({"solve", kData + "/flow10.json", "--method", "nucleolus"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find("payoffs: 11/15 1/5 0 1/3 1/5 3/5 1/3 0 8/15 16/15\n"), std::string::npos);
  EXPECT_EQ(r.out, golden("solve_flow10.txt"));
}

TEST(Cli, PrenucleolusMethod) {
  CliRun r = run({"solve", kData + "/flow10.json", "--method", "prenucleolus"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find("payoffs: 11/15 1/5 0 1/3 1/5 3/5 1/3 0 8/15 16/15\n"), std::string::npos);
}

TEST(Cli, ConvertSingleEdgeNetwork) {
  CliRun r = run({"convert", kGolden + "/single_edge.json"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_EQ(r.out, golden("convert_single_edge.json"));
}

TEST(Cli, CutsAndLogicTablesAreStable) {
  EXPECT_EQ(run({"cuts", kData + "/flow10.json"}).out, golden("cuts_flow10.txt"));
  EXPECT_EQ(run({"logic-tables"}).out, golden("logic_tables.txt"));
}

TEST(Cli, JsonReportIsStable) {
  CliRun r = run({"--format", "json", "verify", kData + "/flow10.json", "--solution", kData + "/nucleolus.json",
               "--checks", "imputation,core,kernel"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_EQ(r.out, golden("verify_nu.json"));
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  std::vector<std::string> args = {"--jobs", "3", "verify", kData + "/flow10.json", "--solution",
                                   kData + "/nucleolus.json"};
  CliRun a = run(args);
  CliRun b = run(args);
  EXPECT_EQ(a.code, kPass);
  EXPECT_EQ(a.out, b.out);
  args[1] = "1";
  EXPECT_EQ(run(args).out, a.out);
}

TEST_F(TempDir, SolveThenVerifyClosesTheLoop) {
  CliRun converted = run({"convert", kData + "/flow10.json", "-o", path("game.json")});
  ASSERT_EQ(converted.code, kPass) << converted.err;
  CliRun solved = run({"solve", path("game.json"), "--method", "nucleolus", "-o", path("solution.json")});
  ASSERT_EQ(solved.code, kPass) << solved.err;
  CliRun verified = run({"verify", path("game.json"), "--solution", path("solution.json")});
  EXPECT_EQ(verified.code, kPass) << verified.out;
  EXPECT_NE(verified.out.find("check kohlberg: pass"), std::string::npos);
}

TEST_F(TempDir, ParseErrorsExitTwo) {
  write("broken.json", "{\"nodes\": [\"s\",\n}");
  CliRun r = run({"cuts", path("broken.json")});
  EXPECT_EQ(r.code, kParseError);
  EXPECT_NE(r.err.find("broken.json:2:1"), std::string::npos) << r.err;

  write("short.json", R"({"payoffs": ["1", "2"]})");
  CliRun s = run({"verify", kData + "/flow10.json", "--solution", path("short.json")});
  EXPECT_EQ(s.code, kParseError);
  EXPECT_NE(s.err.find("/payoffs"), std::string::npos) << s.err;

  EXPECT_EQ(run({"solve", path("missing.json")}).code, kParseError);
  EXPECT_EQ(run({"solve", kData + "/flow10.json", "--method", "shapley"}).code, kParseError);
  EXPECT_EQ(run({"frobnicate"}).code, kParseError);
}

TEST_F(TempDir, PlayerLimitExitsThree) {
  CliRun r = run({"--max-players", "9", "solve", kData + "/flow10.json"});
  EXPECT_EQ(r.code, kLimitExceeded);
  EXPECT_NE(r.err.find("--max-players"), std::string::npos) << r.err;
  write("big.json", R"({"n": 25, "sparse": true, "coalitions": []})");
  EXPECT_EQ(run({"solve", path("big.json")}).code, kLimitExceeded);
}

TEST_F(TempDir, EmptyImputationSetFails) {
  write("empty.json", R"({"n": 2, "coalitions": [{"players": [1], "value": 1}, {"players": [2], "value": 1},
                                                 {"players": [1, 2], "value": 1}]})");
  EXPECT_EQ(run({"solve", path("empty.json")}).code, kFail);
  EXPECT_EQ(run({"solve", path("empty.json"), "--method", "prenucleolus"}).code, kPass);
}

TEST(Cli, PropsOnFlowGame) {
  CliRun r = run({"--jobs", "4", "props", kData + "/flow10.json", "--checks", "zero-monotone,totally-balanced"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_NE(r.out.find("zero-monotone: yes"), std::string::npos);
  EXPECT_NE(r.out.find("1023"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace nucleo::cli
