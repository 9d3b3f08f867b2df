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

#ifndef FRENET_PLANNER__TRAJECTORY_HPP_
#define FRENET_PLANNER__TRAJECTORY_HPP_

#include "frenet_planner/frenet_geometry.hpp"
#include "frenet_planner/quintic.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace frenet_planner
{

struct TrajectorySample
{
  double t{0.0};
  FrenetState state;
  double s_jerk{0.0};
  double d_jerk{0.0};
};

/// One sampled trajectory: longitudinal quintic in time, lateral quintic in
/// longitudinal displacement, and the states sampled at a uniform step.
///
/// `samples` is the authoritative description of the motion. For a freshly
/// generated candidate it is the exact evaluation of `lon`/`lat`; after
/// refinement by the optimizer (`refined == true`) the samples carry the
/// refined motion and the polynomials only describe the sampling seed.
struct TrajectoryCandidate
{
  QuinticCoeffs lon;
  QuinticCoeffs lat;
  double horizon{0.0};
  double dt{0.0};
  std::vector<TrajectorySample> samples;
  FrenetState terminal;
  std::optional<double> cost;
  std::optional<double> regulation_energy;
  std::optional<bool> feasible;
  bool refined{false};
};

struct SamplingGrid
{
  std::vector<double> terminal_speeds;
  std::vector<double> lateral_offsets;
  std::vector<double> horizons;
  double dt{0.05};
};

/// Throws PlannerError(InvalidGrid) when a list is empty, dt <= 0, a horizon
/// is shorter than 4 dt or not an integer multiple of dt.
void validate_grid(const SamplingGrid & grid);

/// A set of candidates sharing one initial state.
struct TrajectoryCluster
{
  std::vector<TrajectoryCandidate> candidates;
  std::size_t reference_index{0};
  FrenetState initial;
  bool budget_exhausted{false};
};

/// Terminal configuration a candidate is solved toward.
struct TerminalTarget
{
  double s{0.0};
  double s_dot{0.0};
  double s_ddot{0.0};
  double d{0.0};
  double d_dot{0.0};
  double d_ddot{0.0};
  double horizon{0.0};
};

/// Solve both quintics from `initial` toward `target` and sample them every
/// dt. Returns std::nullopt for targets that violate forward progress
/// (nonpositive span or s decreasing somewhere on the horizon).
/// Throws PlannerError(PathTooShort) when the terminal s exceeds the path.
std::optional<TrajectoryCandidate> make_candidate(
  const FrenetState & initial, const TerminalTarget & target, const ReferencePath & path,
  double dt);

/// State and per-axis jerk of the candidate's polynomials at time t, the
/// lateral quintic evaluated at the longitudinal displacement s(t) - s(0).
TrajectorySample sample_polynomials(const TrajectoryCandidate & candidate, double t);

/// One candidate per (horizon, terminal speed, lateral offset) triple, in
/// that lexicographic order, with a steady terminal state. Discarded triples
/// leave no gap. Throws PlannerError(EmptyCluster | PathTooShort |
/// InvalidGrid | InvalidInitialState).
TrajectoryCluster generate_cluster(
  const FrenetState & initial, const ReferencePath & path, const SamplingGrid & grid);

/// Order by terminal lateral offset, then terminal speed (stable).
void sort_cluster(TrajectoryCluster & cluster);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__TRAJECTORY_HPP_
