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

#include "frenet_planner/replanning_sim.hpp"

#include "frenet_planner/endpoint_regulation.hpp"
#include "frenet_planner/error.hpp"
#include "frenet_planner/momentum_optimizer.hpp"
#include "frenet_planner/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace frenet_planner
{

namespace
{

constexpr double kCostTie = 1e-12;

double unit_uniform(std::mt19937_64 & rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

TrajectoryCluster build_cluster(
  const FrenetState & initial, const ReferencePath & path, const SamplingGrid & grid,
  const RegulationConfig & regulation, bool spacing)
{
  if (spacing) {
    return regulated_cluster(initial, path, grid, regulation);
  }
  TrajectoryCluster cluster = generate_cluster(initial, path, grid);
  sort_cluster(cluster);
  cluster.reference_index = select_reference_candidate(cluster);
  assign_regulation_energies(cluster, regulation);
  return cluster;
}

}  // namespace

std::string_view to_string(PlannerMode mode)
{
  return mode == PlannerMode::Proposed ? "proposed" : "baseline";
}

std::optional<PlannerMode> parse_mode(std::string_view text)
{
  if (text == "proposed") {
    return PlannerMode::Proposed;
  }
  if (text == "baseline") {
    return PlannerMode::Baseline;
  }
  return std::nullopt;
}

PipelineSwitches PipelineSwitches::for_mode(PlannerMode mode)
{
  if (mode == PlannerMode::Proposed) {
    return {};
  }
  return {false, false, false, false};
}

std::string_view to_string(RunStatus status)
{
  switch (status) {
    case RunStatus::Completed: return "Completed";
    case RunStatus::NoFeasibleCandidate: return "NoFeasibleCandidate";
    case RunStatus::Aborted: return "Aborted";
  }
  return "Unknown";
}

std::vector<TrajectorySample> executed_trajectory(const SimLog & log)
{
  std::vector<TrajectorySample> out;
  for (const CycleRecord & rec : log.cycles) {
    for (std::size_t i = 0; i < rec.executed.size(); ++i) {
      if (i == 0 && !out.empty()) {
        continue;
      }
      out.push_back(rec.executed[i]);
    }
  }
  return out;
}

std::size_t select_candidate(
  std::span<const TrajectoryCandidate> candidates, std::span<const FeasibilityReport> reports)
{
  if (candidates.empty()) {
    throw PlannerError(ErrorCode::EmptyInput, "no candidates to select from");
  }
  if (reports.size() != candidates.size()) {
    throw PlannerError(ErrorCode::EmptyInput, "one feasibility report per candidate required");
  }
  std::optional<std::size_t> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!reports[i].feasible) {
      continue;
    }
    const double cost = candidates[i].cost.value_or(0.0);
    if (std::isnan(cost)) {
      continue;
    }
    if (!best || cost < best_cost - kCostTie) {
      best = i;
      best_cost = cost;
    }
  }
  if (!best) {
    throw PlannerError(ErrorCode::NoFeasibleCandidate, "no candidate passes the limits");
  }
  return *best;
}

SamplingGrid cycle_grid(const SamplingGrid & grid, double jitter, std::uint64_t seed, int cycle)
{
  if (jitter <= 0.0) {
    return grid;
  }
  std::seed_seq seq{
    static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
    static_cast<std::uint32_t>(cycle)};
  std::mt19937_64 rng(seq);
  SamplingGrid out = grid;
  for (double & v : out.terminal_speeds) {
    v = std::max(0.0, v + jitter * (2.0 * unit_uniform(rng) - 1.0));
  }
  for (double & d : out.lateral_offsets) {
    d += jitter * (2.0 * unit_uniform(rng) - 1.0);
  }
  return out;
}

SimLog run(const Scenario & scenario, PlannerMode mode)
{
  return run(scenario, PipelineSwitches::for_mode(mode));
}

SimLog run(const Scenario & scenario, const PipelineSwitches & switches)
{
  validate_scenario(scenario);
  const ReferencePath path = build_reference_path(scenario.waypoints);

  OptimizerConfig optimizer = scenario.optimizer;
  RegulationConfig regulation = scenario.regulation;
  if (!switches.momentum_suppression) {
    optimizer.lambda_s = 0.0;
  }
  if (!switches.endpoint_energy) {
    regulation.lambda_ep = 0.0;
  }
  const double dt = scenario.grid.dt;
  const auto commit_steps =
    static_cast<std::size_t>(std::llround(scenario.sim.commit_horizon / dt));

  SimLog log;
  log.scenario_name = scenario.name;
  log.switches = switches;
  log.seed = scenario.sim.seed;
  log.final_state = scenario.initial;

  FrenetState state = scenario.initial;
  // sample at the previous cycle's commit point
  std::optional<TrajectorySample> last_commit;

  for (int k = 0; k < scenario.sim.n_cycles; ++k) {
    CycleRecord rec;
    rec.cycle = k;
    rec.t_start = static_cast<double>(k) * scenario.sim.cycle_period;
    rec.initial = state;

    CostContext context;
    context.path = &path;
    context.assistive = scenario.assistive;
    context.interaction = scenario.interaction;
    context.sigma_baseline = scenario.uncertainty_baseline;
    context.limits = scenario.limits;
    for (const Neighbor & a : scenario.agents) {
      Neighbor n = a;
      n.position = a.position + rec.t_start * a.velocity;
      context.neighbors.push_back(n);
      rec.agent_positions.push_back(n.position);
    }

    try {
      const SamplingGrid grid =
        cycle_grid(scenario.grid, scenario.sim.sampling_jitter, scenario.sim.seed, k);
      TrajectoryCluster cluster = build_cluster(state, path, grid, regulation, switches.spacing);
      rec.candidate_count = cluster.candidates.size();
      rec.budget_exhausted = cluster.budget_exhausted;
      if (cluster.candidates.size() >= 2) {
        rec.cluster_stats = nn_distance_stats(cluster);
      }

      const TrajectoryCandidate reference = cluster.candidates[cluster.reference_index];
      auto & cands = cluster.candidates;
      rec.reports.resize(cands.size());
      parallel_for(cands.size(), [&](std::size_t i) {
        TrajectoryCandidate & c = cands[i];
        double cost = std::numeric_limits<double>::infinity();
        try {
          if (switches.optimize) {
            OptimizationResult r = optimize_trajectory(c, context, reference, optimizer, regulation);
            c = std::move(r.candidate);
            cost = r.output_cost;
          } else {
            cost = total_cost(c, context, reference, optimizer, regulation);
          }
        } catch (const PlannerError &) {
          // an unevaluable cost (e.g. a neighbor on the path) disqualifies the candidate
        }
        c.cost = cost;
        rec.reports[i] = check_candidate(c, path, scenario.limits);
        c.feasible = rec.reports[i].feasible;
      });
      rec.feasibility = feasibility_breakdown(rec.reports);
      rec.costs.reserve(cands.size());
      for (const auto & c : cands) {
        rec.costs.push_back(*c.cost);
      }

      const std::size_t idx = select_candidate(cands, rec.reports);
      const TrajectoryCandidate & chosen = cands[idx];
      rec.selected = idx;
      rec.cost = *chosen.cost;

      if (last_commit) {
        const FrenetState & prev = last_commit->state;
        const FrenetState & next = chosen.samples.front().state;
        const FrenetState start = sample_polynomials(chosen, 0.0).state;
        SpliceRecord sp;
        sp.cycle = k - 1;
        sp.position_jump = std::hypot(next.s - prev.s, next.d - prev.d);
        sp.velocity_jump = std::hypot(next.s_dot - prev.s_dot, next.d_dot - prev.d_dot);
        sp.acceleration_jump = std::hypot(start.s_ddot - prev.s_ddot, start.d_ddot - prev.d_ddot);
        log.splices.push_back(sp);
      }

      const std::size_t last = std::min(commit_steps, chosen.samples.size() - 1);
      rec.executed.assign(
        chosen.samples.begin(), chosen.samples.begin() + static_cast<std::ptrdiff_t>(last + 1));
      for (auto & s : rec.executed) {
        s.t += rec.t_start;
      }
      last_commit = chosen.samples[last];
      state = chosen.samples[last].state;
      log.final_state = state;
      log.cycles.push_back(std::move(rec));
    } catch (const PlannerError & e) {
      log.status = e.code() == ErrorCode::NoFeasibleCandidate ? RunStatus::NoFeasibleCandidate
                                                              : RunStatus::Aborted;
      log.diagnostic = "cycle " + std::to_string(k) + ": " + e.what();
      log.cycles.push_back(std::move(rec));
      break;
    }
  }
  return log;
}

}  // namespace frenet_planner
