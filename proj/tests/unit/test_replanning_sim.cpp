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


#include "frenet_planner/error.hpp"
#include "frenet_planner/replanning_sim.hpp"
#include "frenet_planner/scenario.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

namespace fp = frenet_planner;

namespace
{

fp::Scenario example()
{
  return fp::load_scenario(std::string(FRENET_PLANNER_SCENARIO_DIR) + "/example_straight.json");
}

fp::TrajectoryCandidate with_cost(double cost)
{
  fp::TrajectoryCandidate c;
  c.cost = cost;
  return c;
}

fp::FeasibilityReport report(bool feasible)
{
  fp::FeasibilityReport r;
  r.feasible = feasible;
  return r;
}

}  // namespace

TEST(ReplanningSim, ModesParseAndMapToSwitches)
{
  EXPECT_EQ(fp::parse_mode("proposed"), fp::PlannerMode::Proposed);
  EXPECT_EQ(fp::parse_mode("baseline"), fp::PlannerMode::Baseline);
  EXPECT_FALSE(fp::parse_mode("other").has_value());
  EXPECT_EQ(fp::PipelineSwitches::for_mode(fp::PlannerMode::Proposed), fp::PipelineSwitches{});
  const auto b = fp::PipelineSwitches::for_mode(fp::PlannerMode::Baseline);
  EXPECT_FALSE(b.spacing || b.optimize || b.momentum_suppression || b.endpoint_energy);
}

TEST(ReplanningSim, CycleGridDependsOnlyOnSeedAndCycle)
{
  fp::SamplingGrid grid{{0.0, 1.0, 2.0}, {-1.0, 0.0, 1.0}, {2.0}, 0.1};
  const auto a = fp::cycle_grid(grid, 0.2, 7, 3);
  const auto b = fp::cycle_grid(grid, 0.2, 7, 3);
  EXPECT_EQ(a.terminal_speeds, b.terminal_speeds);
  EXPECT_EQ(a.lateral_offsets, b.lateral_offsets);
  const auto c = fp::cycle_grid(grid, 0.2, 7, 4);
  EXPECT_NE(a.lateral_offsets, c.lateral_offsets);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(std::abs(a.lateral_offsets[i] - grid.lateral_offsets[i]), 0.2);
    EXPECT_GE(a.terminal_speeds[i], 0.0);
  }
  const auto fixed = fp::cycle_grid(grid, 0.0, 7, 3);
  EXPECT_EQ(fixed.terminal_speeds, grid.terminal_speeds);
  EXPECT_EQ(fixed.lateral_offsets, grid.lateral_offsets);
}

TEST(ReplanningSim, SelectionSkipsInfeasibleAndBreaksTiesLow)
{
  const std::vector<fp::TrajectoryCandidate> cands{with_cost(0.5), with_cost(2.0), with_cost(1.0),
                                                   with_cost(1.0 + 1e-13)};
  const std::vector<fp::FeasibilityReport> reps{report(false), report(true), report(true),
                                                report(true)};
  EXPECT_EQ(fp::select_candidate(cands, reps), 2u);

  const std::vector<fp::FeasibilityReport> none(4, report(false));
  try {
    fp::select_candidate(cands, none);
    FAIL();
  } catch (const fp::PlannerError & e) {
    EXPECT_EQ(e.code(), fp::ErrorCode::NoFeasibleCandidate);
  }
  try {
    fp::select_candidate({}, {});
    FAIL();
  } catch (const fp::PlannerError & e) {
    EXPECT_EQ(e.code(), fp::ErrorCode::EmptyInput);
  }
}

TEST(ReplanningSim, RunIsDeterministicAndSplicesAreContinuous)
{
  const auto sc = example();
  for (const auto mode : {fp::PlannerMode::Proposed, fp::PlannerMode::Baseline}) {
    const auto a = fp::run(sc, mode);
    const auto b = fp::run(sc, mode);
    ASSERT_EQ(a.status, fp::RunStatus::Completed) << a.diagnostic;
    ASSERT_EQ(a.cycles.size(), static_cast<std::size_t>(sc.sim.n_cycles));
    EXPECT_EQ(a.final_state, b.final_state);
    ASSERT_EQ(a.splices.size(), b.splices.size());
    EXPECT_EQ(a.splices.size() + 1, a.cycles.size());
    for (const auto & sp : a.splices) {
      EXPECT_EQ(sp.position_jump, 0.0);
      EXPECT_EQ(sp.velocity_jump, 0.0);
      EXPECT_LE(sp.acceleration_jump, 1e-9);
    }
    const auto exec = fp::executed_trajectory(a);
    ASSERT_FALSE(exec.empty());
    for (std::size_t i = 1; i < exec.size(); ++i) {
      EXPECT_GT(exec[i].t, exec[i - 1].t);
    }
    EXPECT_NEAR(exec.back().t, sc.sim.n_cycles * sc.sim.commit_horizon, 1e-9);
    EXPECT_EQ(exec.back().state, a.final_state);
  }
}

TEST(ReplanningSim, BaselineCyclesKeepRawClusters)
{
  const auto sc = example();
  const auto log = fp::run(sc, fp::PlannerMode::Baseline);
  const std::size_t raw =
    sc.grid.terminal_speeds.size() * sc.grid.lateral_offsets.size() * sc.grid.horizons.size();
  for (const auto & c : log.cycles) {
    EXPECT_LE(c.candidate_count, raw);
    EXPECT_EQ(c.reports.size(), c.candidate_count);
    EXPECT_EQ(c.costs.size(), c.candidate_count);
  }
}

TEST(ReplanningSim, InvalidScenarioThrows)
{
  auto sc = example();
  sc.grid.dt = -1.0;
  try {
    fp::run(sc, fp::PlannerMode::Proposed);
    FAIL();
  } catch (const fp::PlannerError & e) {
    EXPECT_EQ(e.code(), fp::ErrorCode::ScenarioInvalid);
  }
}
