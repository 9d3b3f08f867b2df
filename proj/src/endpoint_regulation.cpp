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

#include "frenet_planner/endpoint_regulation.hpp"

#include "frenet_planner/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace frenet_planner
{

namespace
{
constexpr double kTieTolerance = 1e-9;
constexpr double kGapSlack = 1e-9;

TerminalTarget interpolate(
  const TrajectoryCandidate & a, const TrajectoryCandidate & b, double f, double dt)
{
  const auto lerp = [f](double x, double y) { return x + f * (y - x); };
  TerminalTarget t;
  t.s = lerp(a.terminal.s, b.terminal.s);
  t.s_dot = lerp(a.terminal.s_dot, b.terminal.s_dot);
  t.s_ddot = lerp(a.terminal.s_ddot, b.terminal.s_ddot);
  t.d = lerp(a.terminal.d, b.terminal.d);
  t.d_dot = lerp(a.terminal.d_dot, b.terminal.d_dot);
  t.d_ddot = lerp(a.terminal.d_ddot, b.terminal.d_ddot);
  // keep the horizon on the sampling lattice
  const double steps = std::max(4.0, std::round(lerp(a.horizon, b.horizon) / dt));
  t.horizon = steps * dt;
  return t;
}
}  // namespace

TerminalKinematics terminal_kinematics(const TrajectoryCandidate & candidate)
{
  const FrenetState & x = candidate.terminal;
  return {{x.s_dot, x.s_ddot, x.d_dot, x.d_ddot}};
}

void validate_regulation(const RegulationConfig & config)
{
  for (std::size_t i = 0; i < config.w_ep.size(); ++i) {
    if (!(config.w_ep[i] >= 0.0)) {
      throw PlannerError(
        ErrorCode::ScenarioInvalid, "regulation.w_ep[" + std::to_string(i) + "] must be >= 0");
    }
  }
  if (!(config.epsilon_min >= 0.0)) {
    throw PlannerError(ErrorCode::ScenarioInvalid, "regulation.epsilon_min must be >= 0");
  }
  if (!(config.delta0 > config.epsilon_min)) {
    throw PlannerError(
      ErrorCode::ScenarioInvalid, "regulation.delta0 must exceed regulation.epsilon_min");
  }
  if (!(config.lambda_ep >= 0.0)) {
    throw PlannerError(ErrorCode::ScenarioInvalid, "regulation.lambda_ep must be >= 0");
  }
}

std::size_t select_reference_candidate(const TrajectoryCluster & cluster)
{
  const auto & cs = cluster.candidates;
  if (cs.empty()) {
    throw PlannerError(ErrorCode::EmptyCluster, "cannot select a reference from no candidates");
  }
  std::vector<double> speeds;
  speeds.reserve(cs.size());
  for (const auto & c : cs) {
    speeds.push_back(c.terminal.s_dot);
  }
  std::sort(speeds.begin(), speeds.end());
  const std::size_t m = speeds.size() / 2;
  const double median = speeds.size() % 2 == 1 ? speeds[m] : 0.5 * (speeds[m - 1] + speeds[m]);

  std::size_t best = 0;
  double best_dist = std::hypot(cs[0].terminal.d, cs[0].terminal.s_dot - median);
  for (std::size_t i = 1; i < cs.size(); ++i) {
    const double dist = std::hypot(cs[i].terminal.d, cs[i].terminal.s_dot - median);
    if (dist < best_dist - kTieTolerance) {
      best = i;
      best_dist = dist;
    }
  }
  return best;
}

double regulation_energy(
  const TrajectoryCandidate & candidate, const TrajectoryCandidate & reference,
  const RegulationConfig & config)
{
  const auto eta = terminal_kinematics(candidate).eta;
  const auto eta_ref = terminal_kinematics(reference).eta;
  double energy = 0.0;
  for (std::size_t k = 0; k < eta.size(); ++k) {
    const double r = config.w_ep[k] * (eta[k] - eta_ref[k]);
    energy += r * r;
  }
  return energy;
}

TrajectoryCluster enforce_spacing(
  TrajectoryCluster cluster, const RegulationConfig & config, const ReferencePath & path,
  const SamplingGrid & grid)
{
  if (cluster.candidates.empty()) {
    throw PlannerError(ErrorCode::EmptyCluster, "nothing to regulate");
  }

  // (a) de-duplicate against the last kept terminal
  std::vector<TrajectoryCandidate> kept;
  kept.reserve(cluster.candidates.size());
  for (auto & c : cluster.candidates) {
    if (!kept.empty() && state_distance(c.terminal, kept.back().terminal) < config.epsilon_min) {
      continue;
    }
    kept.push_back(std::move(c));
  }

  // (b) fill gaps wider than delta0
  std::vector<TrajectoryCandidate> filled;
  filled.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i > 0) {
      const TrajectoryCandidate & a = kept[i - 1];
      const TrajectoryCandidate & b = kept[i];
      const double gap = state_distance(a.terminal, b.terminal);
      if (gap > config.delta0 * (1.0 + kGapSlack)) {
        const auto needed = static_cast<std::size_t>(std::ceil(gap / config.delta0 - kGapSlack)) - 1;
        const std::size_t count = std::min(needed, kInsertionBudget);
        if (needed > kInsertionBudget || gap / static_cast<double>(count + 1) < config.epsilon_min) {
          cluster.budget_exhausted = true;
        }
        for (std::size_t k = 1; k <= count; ++k) {
          const double f = static_cast<double>(k) / static_cast<double>(count + 1);
          auto inserted = make_candidate(cluster.initial, interpolate(a, b, f, grid.dt), path, grid.dt);
          if (inserted) {
            filled.push_back(std::move(*inserted));
          } else {
            cluster.budget_exhausted = true;
          }
        }
      }
    }
    filled.push_back(std::move(kept[i]));
  }

  cluster.candidates = std::move(filled);
  sort_cluster(cluster);
  cluster.reference_index = select_reference_candidate(cluster);
  return cluster;
}

void assign_regulation_energies(TrajectoryCluster & cluster, const RegulationConfig & config)
{
  const TrajectoryCandidate reference = cluster.candidates.at(cluster.reference_index);
  for (auto & c : cluster.candidates) {
    c.regulation_energy = regulation_energy(c, reference, config);
  }
}

TrajectoryCluster regulated_cluster(
  const FrenetState & initial, const ReferencePath & path, const SamplingGrid & grid,
  const RegulationConfig & config)
{
  TrajectoryCluster cluster = generate_cluster(initial, path, grid);
  sort_cluster(cluster);
  cluster = enforce_spacing(std::move(cluster), config, path, grid);
  assign_regulation_energies(cluster, config);
  return cluster;
}

}  // namespace frenet_planner
