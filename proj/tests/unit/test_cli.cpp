// Copyright 2026 The espnor Authors
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

// Runs the installed command-line binary end to end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "espnor/instance.hpp"

namespace espnor {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("espnor_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args) const {
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string(ESPNOR_CLI_PATH) + " " + args + " >" + (dir_ / "stdout.txt").string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
  }
  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(Cli, GenerateOracleAndCompare) {
  const fs::path inst = dir_ / "a.json";
  ASSERT_EQ(run("gen --n-ao 3 --n-act 2 --seed 4 --out " + inst.string()).code, 0);
  EXPECT_EQ(load_instance(inst), generate_synthetic_instance(3, 2, 4));
  ASSERT_EQ(run("oracle --instance " + inst.string() + " --out " + (dir_ / "o.json").string()).code, 0);
  const fs::path o = dir_ / "o.json" / "report.json";
  ASSERT_EQ(run("compare " + o.string() + " " + o.string()).code, 0);
  const auto c = nlohmann::json::parse(slurp(dir_ / "stdout.txt"));
  EXPECT_EQ(c["delta_e_hartree"].get<double>(), 0.0);
}

TEST_F(Cli, RunWritesReportAndSidecars) {
  const fs::path inst = dir_ / "a.json";
  ASSERT_EQ(run("gen --n-ao 3 --n-act 2 --seed 1 --out " + inst.string()).code, 0);
  const fs::path out = dir_ / "run";
  ASSERT_EQ(run("run --instance " + inst.string() + " --seed 3 --shots 2000 --out " + out.string()).code, 0);
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "trace.csv"));
  EXPECT_TRUE(fs::exists(out / "convergence.csv"));
  const auto r = nlohmann::json::parse(slurp(out / "report.json"));
  EXPECT_EQ(r["seed"].get<std::uint64_t>(), 3u);
  EXPECT_EQ(r["shots"].get<std::uint64_t>(), 2000u);
}

TEST_F(Cli, CorruptInstanceFailsInLoad) {
  const fs::path inst = dir_ / "bad.json";
  std::ofstream(inst) << "{\"format\": \"espnor-instance-v1\", \"n_ao\": ";
  Result r = run("run --instance " + inst.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("load"), std::string::npos) << r.err;
  r = run("compare " + dir_.string() + " " + inst.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not a regular file"), std::string::npos) << r.err;
}

TEST_F(Cli, MissingInstanceAndBadFlags) {
  EXPECT_EQ(run("run --instance " + (dir_ / "missing.json").string()).code, 2);
  EXPECT_EQ(run("run").code, 2);
  EXPECT_EQ(run("gen --n-ao 3 --n-act 5 --out " + (dir_ / "x.json").string()).code, 2);
}

}  // namespace
}  // namespace espnor
