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

#ifndef FRENET_PLANNER__CLI_HPP_
#define FRENET_PLANNER__CLI_HPP_

#include "frenet_planner/replanning_sim.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace frenet_planner::cli
{

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

int cmd_validate(const std::filesystem::path & scenario, std::ostream & out, std::ostream & err);

struct RunOptions
{
  std::filesystem::path scenario;
  PlannerMode mode{PlannerMode::Proposed};
  std::optional<std::uint64_t> seed;  ///< overrides sim.seed
  std::filesystem::path out_dir;
};

/// Writes simlog.json, profiles.csv, jerk_stats.csv, endpoint_nn.csv,
/// feasibility.csv and finally manifest.json. A run that ends early keeps
/// its data files but gets no manifest.
int cmd_run(const RunOptions & options, std::ostream & out, std::ostream & err);

enum class DumpKind
{
  Endpoints,
  Full,
};

struct ClusterOptions
{
  std::filesystem::path scenario;
  DumpKind dump{DumpKind::Endpoints};
  PlannerMode mode{PlannerMode::Proposed};  ///< baseline skips spacing enforcement
  std::filesystem::path out_dir{"."};
};

/// Writes endpoints.csv or cluster_full.csv plus nn_histogram.csv for one
/// cluster at the scenario's initial state.
int cmd_cluster(const ClusterOptions & options, std::ostream & out, std::ostream & err);

/// Argument parsing and dispatch; returns the process exit code.
int main_entry(int argc, char ** argv);

}  // namespace frenet_planner::cli

#endif  // FRENET_PLANNER__CLI_HPP_
