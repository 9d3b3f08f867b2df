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

#ifndef FRENET_PLANNER__SCENARIO_HPP_
#define FRENET_PLANNER__SCENARIO_HPP_

#include "frenet_planner/endpoint_regulation.hpp"
#include "frenet_planner/evaluation.hpp"
#include "frenet_planner/forces.hpp"
#include "frenet_planner/frenet_geometry.hpp"
#include "frenet_planner/momentum_optimizer.hpp"
#include "frenet_planner/trajectory.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace frenet_planner
{

inline constexpr int kScenarioSchemaVersion = 1;

struct SimSettings
{
  double cycle_period{1.0};
  double commit_horizon{1.0};
  int n_cycles{20};
  std::uint64_t seed{0};
  /// Half-width of the uniform per-cycle perturbation applied to every
  /// sampled terminal speed and lateral offset; 0 keeps the grid fixed.
  double sampling_jitter{0.0};
};

struct Scenario
{
  std::string name;
  std::vector<Point2> waypoints;
  FrenetState initial;
  std::vector<Neighbor> agents;  ///< positions at t = 0, constant velocity
  double uncertainty_baseline{0.0};
  KinematicLimits limits;
  SamplingGrid grid;
  RegulationConfig regulation;
  OptimizerConfig optimizer;
  AssistiveParams assistive;
  InteractionParams interaction;
  SimSettings sim;
};

/// Every invariant violation of an in-memory scenario, each message naming
/// its field. Empty means valid.
std::vector<std::string> scenario_violations(const Scenario & scenario);

/// Throws PlannerError(ScenarioInvalid) listing every violation.
void validate_scenario(const Scenario & scenario);

struct ScenarioParse
{
  Scenario scenario;
  std::vector<std::string> violations;  ///< schema and invariant problems
  bool ok() const { return violations.empty(); }
};

/// Parses JSON text without throwing on schema problems. Malformed JSON
/// yields a single violation carrying the line number.
ScenarioParse parse_scenario(std::string_view text);

/// parse_scenario on a file. Throws PlannerError(FileNotFound) when the file
/// cannot be read and PlannerError(SchemaViolation) listing every violation.
Scenario load_scenario(const std::filesystem::path & path);

/// Serializes with every key spelled out (schema version 1).
std::string scenario_to_json(const Scenario & scenario);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__SCENARIO_HPP_
