// Copyright 2026 The Frenet Planner Authors
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


#include "frenet_planner/cli.hpp"
#include "frenet_planner/report_io.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fp = frenet_planner;
namespace cli = frenet_planner::cli;
namespace fs = std::filesystem;

namespace
{

const fs::path kScenarios{FRENET_PLANNER_SCENARIO_DIR};

std::string slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    const auto * info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("fp_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

std::vector<std::string> lines(const std::string & text)
{
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    out.push_back(l);
  }
  return out;
}

}  // namespace

TEST(CliHash, KnownDigests)
{
  EXPECT_EQ(
    cli::sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(
    cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(CliTest, ValidateExitCodes)
{
  EXPECT_EQ(cli::cmd_validate(kScenarios / "example_straight.json", out_, err_), cli::kExitOk);
  EXPECT_EQ(cli::cmd_validate(dir_ / "missing.json", out_, err_), cli::kExitUsage);

  std::string text = slurp(kScenarios / "example_straight.json");
  text.replace(text.find("\"delta0\": 0.3"), 13, "\"delta0\": 0.1");
  std::ofstream(dir_ / "bad.json") << text;
  err_.str("");
  EXPECT_EQ(cli::cmd_validate(dir_ / "bad.json", out_, err_), cli::kExitUsage);
  EXPECT_NE(err_.str().find("regulation.delta0"), std::string::npos) << err_.str();
}

TEST_F(CliTest, RunTwiceIsByteIdentical)
{
  cli::RunOptions opt;
  opt.scenario = kScenarios / "example_straight.json";
  opt.seed = 11;
  opt.out_dir = dir_ / "a";
  ASSERT_EQ(cli::cmd_run(opt, out_, err_), cli::kExitOk) << err_.str();
  opt.out_dir = dir_ / "b";
  ASSERT_EQ(cli::cmd_run(opt, out_, err_), cli::kExitOk) << err_.str();
  for (const char * name :
       {"simlog.json", "profiles.csv", "jerk_stats.csv", "endpoint_nn.csv", "feasibility.csv"}) {
    const auto a = slurp(dir_ / "a" / name);
    EXPECT_FALSE(a.empty()) << name;
    EXPECT_EQ(a, slurp(dir_ / "b" / name)) << name;
  }
  auto ma = nlohmann::json::parse(slurp(dir_ / "a" / "manifest.json"));
  auto mb = nlohmann::json::parse(slurp(dir_ / "b" / "manifest.json"));
  ma.erase("duration_seconds");
  mb.erase("duration_seconds");
  EXPECT_EQ(ma, mb);
  EXPECT_EQ(ma["scenario"]["sha256"], cli::sha256_hex(slurp(opt.scenario)));
  EXPECT_EQ(ma["seed"], 11);
  EXPECT_EQ(ma["outputs"].size(), 6u);
}

TEST_F(CliTest, InfeasibleRunIsADomainFailure)
{
  std::string text = slurp(kScenarios / "example_straight.json");
  text.replace(text.find("\"v_max\": 2.0"), 12, "\"v_max\": 0.1");
  std::ofstream(dir_ / "slow.json") << text;
  cli::RunOptions opt;
  opt.scenario = dir_ / "slow.json";
  opt.out_dir = dir_ / "run";
  EXPECT_EQ(cli::cmd_run(opt, out_, err_), cli::kExitDomain);
  EXPECT_TRUE(fs::exists(opt.out_dir / "simlog.json"));
  EXPECT_FALSE(fs::exists(opt.out_dir / "manifest.json"));
}

TEST_F(CliTest, ClusterDumps)
{
  cli::ClusterOptions opt;
  opt.scenario = kScenarios / "example_straight.json";
  opt.out_dir = dir_;
  ASSERT_EQ(cli::cmd_cluster(opt, out_, err_), cli::kExitOk) << err_.str();
  const auto rows = lines(slurp(dir_ / "endpoints.csv"));
  ASSERT_GT(rows.size(), 2u);
  EXPECT_EQ(rows[0], "index,s,s_dot,s_ddot,d,d_dot,d_ddot,horizon,nn_distance,gap_to_previous");
  EXPECT_TRUE(fs::exists(dir_ / "nn_histogram.csv"));

  opt.dump = cli::DumpKind::Full;
  ASSERT_EQ(cli::cmd_cluster(opt, out_, err_), cli::kExitOk);
  EXPECT_GT(lines(slurp(dir_ / "cluster_full.csv")).size(), rows.size());
}

TEST_F(CliTest, SingleCellGridGivesOneEndpoint)
{
  std::string text = slurp(kScenarios / "example_straight.json");
  text.replace(text.find("[0.8, 1.0, 1.2, 1.4]"), 20, "[1.0]");
  text.replace(text.find("[-1.0, -0.5, 0.0, 0.5, 1.0]"), 27, "[0.0]");
  text.replace(text.find("[2.0, 3.0]"), 10, "[2.0]");
  std::ofstream(dir_ / "one.json") << text;
  cli::ClusterOptions opt;
  opt.scenario = dir_ / "one.json";
  opt.out_dir = dir_;
  ASSERT_EQ(cli::cmd_cluster(opt, out_, err_), cli::kExitOk) << err_.str();
  EXPECT_EQ(lines(slurp(dir_ / "endpoints.csv")).size(), 2u);
}

TEST_F(CliTest, RegulationEvensOutTheHistogram)
{
  auto entropy = [&](fp::PlannerMode mode) {
    cli::ClusterOptions opt;
    opt.scenario = kScenarios / "example_straight.json";
    opt.mode = mode;
    opt.out_dir = dir_;
    EXPECT_EQ(cli::cmd_cluster(opt, out_, err_), cli::kExitOk);
    std::vector<fp::HistogramBin> bins;
    const auto rows = lines(slurp(dir_ / "nn_histogram.csv"));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      fp::HistogramBin b;
      b.count = std::stoul(rows[i].substr(rows[i].rfind(',') + 1));
      bins.push_back(b);
    }
    return fp::histogram_entropy(bins);
  };
  EXPECT_GT(entropy(fp::PlannerMode::Proposed), entropy(fp::PlannerMode::Baseline));
}

TEST(CliProcess, ExitCodes)
{
  const std::string exe = FRENET_PLANNER_CLI;
  const std::string example = (kScenarios / "example_straight.json").string();
  auto code = [](const std::string & cmd) {
    const int st = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(st);
  };
  EXPECT_EQ(code(exe + " validate " + example), 0);
  EXPECT_EQ(code(exe + " validate /nonexistent.json"), 2);
  EXPECT_EQ(code(exe + " run " + example), 2);  // --out missing
  EXPECT_EQ(code(exe + " bogus"), 2);
  EXPECT_EQ(code(exe + " run --mode sideways --out /tmp/x " + example), 2);
}
