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

#ifndef FRENET_PLANNER__REPLANNING_SIM_HPP_
#define FRENET_PLANNER__REPLANNING_SIM_HPP_

#include "frenet_planner/evaluation.hpp"
#include "frenet_planner/scenario.hpp"
#include "frenet_planner/trajectory.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frenet_planner
{

enum class PlannerMode
{
  Proposed,
  Baseline,
};

std::string_view to_string(PlannerMode mode);
std::optional<PlannerMode> parse_mode(std::string_view text);

/// The ablation switches separating the two modes. Baseline turns all of
/// them off.
struct PipelineSwitches
{
  bool spacing{true};             ///< enforce_spacing on each cluster
  bool optimize{true};            ///< run optimize_trajectory on every candidate
  bool momentum_suppression{true}; ///< keep optimizer.lambda_s, else 0
  bool endpoint_energy{true};     ///< keep regulation.lambda_ep, else 0

  static PipelineSwitches for_mode(PlannerMode mode);
  bool operator==(const PipelineSwitches &) const = default;
};

struct CycleRecord
{
  int cycle{0};
  double t_start{0.0};
  FrenetState initial;
  std::vector<Point2> agent_positions;
  std::size_t candidate_count{0};
  bool budget_exhausted{false};
  std::optional<ClusterStats> cluster_stats;  ///< absent below two candidates
  std::vector<FeasibilityReport> reports;     ///< one per candidate
  FeasibilityBreakdown feasibility;
  std::vector<double> costs;                  ///< one per candidate
  std::optional<std::size_t> selected;
  double cost{0.0};
  std::vector<TrajectorySample> executed;     ///< absolute time stamps
};

/// Discontinuities between the state executed up to a commit point and the
/// next cycle's selected trajectory at its start.
struct SpliceRecord
{
  int cycle{0};  ///< cycle whose commit point this is
  double position_jump{0.0};
  double velocity_jump{0.0};
  double acceleration_jump{0.0};  ///< against the next trajectory's polynomial representation
};

enum class RunStatus
{
  Completed,
  NoFeasibleCandidate,
  Aborted,  ///< another domain error ended the run; see diagnostic
};
std::string_view to_string(RunStatus status);

struct SimLog
{
  std::string scenario_name;
  PipelineSwitches switches;
  std::uint64_t seed{0};
  std::vector<CycleRecord> cycles;
  std::vector<SpliceRecord> splices;
  FrenetState final_state;
  RunStatus status{RunStatus::Completed};
  std::string diagnostic;
};

/// Executed samples of all cycles in time order, each splice point once.
std::vector<TrajectorySample> executed_trajectory(const SimLog & log);

/// Minimum `cost` among feasible candidates; costs within 1e-12 go to the
/// smaller index. Throws PlannerError(EmptyInput) on an empty list and
/// PlannerError(NoFeasibleCandidate) when nothing is feasible.
std::size_t select_candidate(
  std::span<const TrajectoryCandidate> candidates, std::span<const FeasibilityReport> reports);

/// Grid for one cycle: every terminal speed and lateral offset moved by an
/// independent uniform draw in [-jitter, jitter] (speeds floored at 0).
/// Depends only on (seed, cycle).
SamplingGrid cycle_grid(const SamplingGrid & grid, double jitter, std::uint64_t seed, int cycle);

/// Runs scenario.sim.n_cycles planning cycles. Throws
/// PlannerError(ScenarioInvalid) for an invalid scenario; domain failures
/// inside the loop end the run and are reported through SimLog::status.
SimLog run(const Scenario & scenario, PlannerMode mode);
SimLog run(const Scenario & scenario, const PipelineSwitches & switches);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__REPLANNING_SIM_HPP_
