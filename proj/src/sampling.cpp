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
#include "frenet_planner/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace frenet_planner
{

namespace
{
// Below this longitudinal speed the lateral slope d' = d_dot / s_dot is
// undefined and lateral rates must vanish.
constexpr double kMinLongitudinalSpeed = 1e-6;
constexpr double kRateTolerance = 1e-9;

// Lateral boundary data in the displacement domain from time-domain rates.
BoundaryValue lateral_boundary(
  double d, double d_dot, double d_ddot, double s_dot, double s_ddot, const char * which)
{
  BoundaryValue b{d, 0.0, 0.0};
  if (s_dot > kMinLongitudinalSpeed) {
    b.d1 = d_dot / s_dot;
    b.d2 = (d_ddot - b.d1 * s_ddot) / (s_dot * s_dot);
    return b;
  }
  if (std::abs(d_dot) > kRateTolerance) {
    throw PlannerError(
      ErrorCode::InvalidInitialState,
      std::string(which) + " state has lateral velocity without longitudinal motion");
  }
  if (std::abs(s_ddot) > kRateTolerance) {
    b.d1 = d_ddot / s_ddot;
  } else if (std::abs(d_ddot) > kRateTolerance) {
    throw PlannerError(
      ErrorCode::InvalidInitialState,
      std::string(which) + " state has lateral acceleration without longitudinal motion");
  }
  return b;
}

std::size_t step_count(double horizon, double dt)
{
  return static_cast<std::size_t>(std::llround(horizon / dt));
}
}  // namespace

void validate_grid(const SamplingGrid & grid)
{
  if (grid.terminal_speeds.empty() || grid.lateral_offsets.empty() || grid.horizons.empty()) {
    throw PlannerError(ErrorCode::InvalidGrid, "sampling lists must be non-empty");
  }
  if (!(grid.dt > 0.0)) {
    throw PlannerError(ErrorCode::InvalidGrid, "dt must be positive");
  }
  for (double h : grid.horizons) {
    if (!(h >= 4.0 * grid.dt - 1e-12)) {
      throw PlannerError(
        ErrorCode::InvalidGrid, "horizon " + std::to_string(h) + " shorter than 4 dt");
    }
    const double ratio = h / grid.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-6) {
      throw PlannerError(
        ErrorCode::InvalidGrid, "horizon " + std::to_string(h) + " is not a multiple of dt");
    }
  }
}

std::optional<TrajectoryCandidate> make_candidate(
  const FrenetState & initial, const TerminalTarget & target, const ReferencePath & path,
  double dt)
{
  const double span = target.s - initial.s;
  if (!(span > 0.0)) {
    return std::nullopt;
  }
  if (target.s > path.total_length() + 1e-9) {
    throw PlannerError(
      ErrorCode::PathTooShort, "terminal s = " + std::to_string(target.s) +
      " beyond path length " + std::to_string(path.total_length()));
  }

  TrajectoryCandidate c;
  c.horizon = target.horizon;
  c.dt = dt;
  c.lon = solve_quintic(
    {initial.s, initial.s_dot, initial.s_ddot}, {target.s, target.s_dot, target.s_ddot},
    target.horizon);

  const BoundaryValue lat0 = lateral_boundary(
    initial.d, initial.d_dot, initial.d_ddot, initial.s_dot, initial.s_ddot, "initial");
  const BoundaryValue lat1 = lateral_boundary(
    target.d, target.d_dot, target.d_ddot, target.s_dot, target.s_ddot, "terminal");
  try {
    c.lat = solve_quintic(lat0, lat1, span);
  } catch (const PlannerError & e) {
    if (e.code() == ErrorCode::IllConditioned) {
      return std::nullopt;
    }
    throw;
  }

  const std::size_t n = step_count(target.horizon, dt);
  c.samples.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? target.horizon : static_cast<double>(i) * dt;
    c.samples[i] = sample_polynomials(c, t);
    if (c.samples[i].state.s_dot < -1e-9) {
      return std::nullopt;
    }
  }
  c.samples.front().state = initial;
  c.terminal = c.samples.back().state;
  return c;
}

TrajectorySample sample_polynomials(const TrajectoryCandidate & candidate, double t)
{
  const PolyEval lon = eval_quintic(candidate.lon, t);
  const PolyEval lat = eval_quintic(candidate.lat, lon.value - candidate.lon.c[0]);
  const double v = lon.d1;
  const double a = lon.d2;
  TrajectorySample smp;
  smp.t = t;
  smp.state.s = lon.value;
  smp.state.s_dot = v;
  smp.state.s_ddot = a;
  smp.state.d = lat.value;
  smp.state.d_dot = lat.d1 * v;
  smp.state.d_ddot = lat.d2 * v * v + lat.d1 * a;
  smp.s_jerk = lon.d3;
  smp.d_jerk = lat.d3 * v * v * v + 3.0 * lat.d2 * v * a + lat.d1 * lon.d3;
  return smp;
}

TrajectoryCluster generate_cluster(
  const FrenetState & initial, const ReferencePath & path, const SamplingGrid & grid)
{
  validate_grid(grid);
  if (!initial.is_finite() || initial.s < -1e-9 || initial.s > path.total_length()) {
    throw PlannerError(ErrorCode::InvalidInitialState, "initial state not on the path");
  }

  TrajectoryCluster cluster;
  cluster.initial = initial;
  for (double horizon : grid.horizons) {
    for (double speed : grid.terminal_speeds) {
      for (double offset : grid.lateral_offsets) {
        TerminalTarget target;
        target.s = initial.s + 0.5 * (initial.s_dot + speed) * horizon;
        target.s_dot = speed;
        target.d = offset;
        target.horizon = horizon;
        if (auto c = make_candidate(initial, target, path, grid.dt)) {
          cluster.candidates.push_back(std::move(*c));
        }
      }
    }
  }
  if (cluster.candidates.empty()) {
    throw PlannerError(ErrorCode::EmptyCluster, "every sampled terminal was discarded");
  }
  return cluster;
}

void sort_cluster(TrajectoryCluster & cluster)
{
  std::stable_sort(
    cluster.candidates.begin(), cluster.candidates.end(),
    [](const TrajectoryCandidate & a, const TrajectoryCandidate & b) {
      // quantized so evaluation round-off does not split equal targets
      const auto key = [](double v) { return std::llround(v * 1e9); };
      if (key(a.terminal.d) != key(b.terminal.d)) {
        return key(a.terminal.d) < key(b.terminal.d);
      }
      return key(a.terminal.s_dot) < key(b.terminal.s_dot);
    });
}

}  // namespace frenet_planner
