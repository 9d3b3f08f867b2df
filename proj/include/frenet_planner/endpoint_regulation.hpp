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

#ifndef FRENET_PLANNER__ENDPOINT_REGULATION_HPP_
#define FRENET_PLANNER__ENDPOINT_REGULATION_HPP_

#include "frenet_planner/frenet_geometry.hpp"
#include "frenet_planner/trajectory.hpp"

#include <array>
#include <cstddef>

namespace frenet_planner
{

/// Terminal velocity/acceleration components [s_dot, s_ddot, d_dot, d_ddot].
struct TerminalKinematics
{
  std::array<double, 4> eta{};
};

TerminalKinematics terminal_kinematics(const TrajectoryCandidate & candidate);

struct RegulationConfig
{
  std::array<double, 4> w_ep{1.0, 0.5, 1.0, 0.5};  ///< diagonal weights
  double delta0{0.5};       ///< upper bound on consecutive terminal gaps
  double epsilon_min{0.02}; ///< de-duplication floor
  double lambda_ep{1.0};
};

/// Throws PlannerError(ScenarioInvalid) naming the offending field.
void validate_regulation(const RegulationConfig & config);

/// Interpolated candidates allowed per oversized gap.
inline constexpr std::size_t kInsertionBudget = 8;

/// Candidate whose terminal (d, s_dot) is closest to (0, median terminal
/// speed); ties within 1e-9 go to the smaller index.
std::size_t select_reference_candidate(const TrajectoryCluster & cluster);

/// ||W_ep (eta_i - eta_ref)||^2, each candidate evaluated at its own horizon.
double regulation_energy(
  const TrajectoryCandidate & candidate, const TrajectoryCandidate & reference,
  const RegulationConfig & config);

/// Removes terminals closer than epsilon_min to their predecessor, then
/// fills consecutive gaps wider than delta0 with candidates solved toward
/// linearly interpolated terminals. Gaps the budget cannot close set
/// `budget_exhausted` on the result. Expects a sorted cluster.
TrajectoryCluster enforce_spacing(
  TrajectoryCluster cluster, const RegulationConfig & config, const ReferencePath & path,
  const SamplingGrid & grid);

/// Stores regulation_energy against the cluster reference on every candidate.
void assign_regulation_energies(TrajectoryCluster & cluster, const RegulationConfig & config);

/// generate_cluster -> sort -> enforce_spacing, energies attached.
TrajectoryCluster regulated_cluster(
  const FrenetState & initial, const ReferencePath & path, const SamplingGrid & grid,
  const RegulationConfig & config);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__ENDPOINT_REGULATION_HPP_
