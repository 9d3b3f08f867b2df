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

#ifndef FRENET_PLANNER__MOMENTUM_OPTIMIZER_HPP_
#define FRENET_PLANNER__MOMENTUM_OPTIMIZER_HPP_

#include "frenet_planner/endpoint_regulation.hpp"
#include "frenet_planner/evaluation.hpp"
#include "frenet_planner/forces.hpp"
#include "frenet_planner/frenet_geometry.hpp"
#include "frenet_planner/trajectory.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <vector>

namespace frenet_planner
{

/// Linear kinematic model x_dot = A x + B u, y = C x + D u over the Frenet
/// state, one triple integrator per axis with jerk input.
struct KinematicModel
{
  Eigen::Matrix<double, 6, 6> A;
  Eigen::Matrix<double, 6, 2> B;
  Eigen::Matrix<double, 6, 6> C;
  Eigen::Matrix<double, 6, 2> D;

  static KinematicModel frenet_triple_integrator();

  Eigen::Matrix<double, 6, 1> state_derivative(const FrenetState & x, const Vector2 & jerk) const;
  Eigen::Matrix<double, 6, 1> output(const FrenetState & x, const Vector2 & jerk) const;
};

struct OptimizerConfig
{
  double mass{1.0};
  double lambda_s{0.1};   ///< momentum-change suppression
  double lambda_u{0.05};  ///< uncertainty regularization
  double dt{0.05};
  int max_iters{50};
  double armijo_c{1e-4};
  double step_shrink{0.5};
  double grad_tol{1e-6};
};

/// Throws PlannerError(ScenarioInvalid) naming the offending field.
void validate_optimizer(const OptimizerConfig & config);

/// Read-only scenario data the running cost depends on. Neighbor positions
/// are given at the candidate's t = 0 and extrapolated at constant velocity.
struct CostContext
{
  const ReferencePath * path{nullptr};
  AssistiveParams assistive;
  InteractionParams interaction;
  std::vector<Neighbor> neighbors;
  double sigma_baseline{0.0};
  /// Admissible region for the optimizer. When set, no accepted iterate may
  /// push a constraint margin above max(1, the input's margin).
  std::optional<KinematicLimits> limits;

  /// Trace of the uncertainty descriptor: baseline plus every neighbor's
  /// covariance trace.
  double sigma_trace() const;
};

/// 1/2 m |v|^2 - F_ext . v + lambda_s |v_dot|^2 + lambda_u sigma_trace with
/// v = (s_dot, d_dot).
double lagrangian_at(
  const FrenetState & state, const Vector2 & v_dot, const Vector2 & f_ext, double sigma_trace,
  const OptimizerConfig & config);

/// F_ext = -F_asst + F_int, with F_int projected on the path frame at the
/// state's position. `t` is time since the candidate start.
Vector2 external_force(const FrenetState & state, double t, const CostContext & context);

/// Trapezoidal integral of the Lagrangian over the candidate's samples plus
/// regulation.lambda_ep times the regulation energy against `reference`.
double total_cost(
  const TrajectoryCandidate & candidate, const CostContext & context,
  const TrajectoryCandidate & reference, const OptimizerConfig & config,
  const RegulationConfig & regulation);

/// The cost discretized on the candidate's sample grid with positions as the
/// only unknowns. Velocities live on the half steps as central differences
/// of adjacent positions, accelerations on the nodes as central second
/// differences (boundary accelerations stay at their sampled values), and
/// the running cost is integrated with the midpoint rule. Decision vector
/// layout: [s_1 .. s_{N-1}, d_1 .. d_{N-1}]; samples 0 and N are fixed.
class DiscretizedObjective
{
public:
  DiscretizedObjective(
    const TrajectoryCandidate & candidate, const CostContext & context,
    const OptimizerConfig & config, double terminal_term);

  std::size_t interior_count() const { return interior_; }
  const Eigen::VectorXd & initial_variables() const { return initial_; }

  double value(const Eigen::VectorXd & x) const;
  double value_and_gradient(const Eigen::VectorXd & x, Eigen::VectorXd & gradient) const;

private:
  double evaluate(const Eigen::VectorXd & x, Eigen::VectorXd * gradient) const;

  const CostContext & context_;
  OptimizerConfig config_;
  double terminal_term_;
  double dt_;
  std::size_t interior_;
  FrenetState first_;
  FrenetState last_;
  Eigen::VectorXd initial_;
  // per half step: distance from the path point at the initial midpoint to
  // the nearest predicted neighbor, used to skip out-of-range interactions
  std::vector<double> anchor_s_;
  std::vector<double> anchor_clearance_;
};

/// Gradient of the discretized cost at `x`.
Eigen::VectorXd cost_gradient(const DiscretizedObjective & objective, const Eigen::VectorXd & x);

enum class OptimizerTermination
{
  NoIterations,
  GradientTolerance,
  MaxIterations,
  LineSearchFailed,
};

struct OptimizationResult
{
  TrajectoryCandidate candidate;
  std::vector<double> cost_history;  ///< discretized cost per accepted iterate
  int iterations{0};
  OptimizerTermination termination{OptimizerTermination::NoIterations};
  double input_cost{0.0};   ///< total_cost of the input
  double output_cost{0.0};  ///< total_cost of the returned candidate
};

/// Projected gradient descent with Armijo backtracking on the interior
/// position samples. The gradient is projected onto perturbations that vanish
/// with their first two derivatives at both ends, so the boundary states are
/// untouched. With context.limits set, trial steps that leave the admissible
/// region are shrunk like Armijo failures. Returns the input unchanged when no iterate improves its
/// total_cost.
OptimizationResult optimize_trajectory(
  const TrajectoryCandidate & candidate, const CostContext & context,
  const TrajectoryCandidate & reference, const OptimizerConfig & config,
  const RegulationConfig & regulation);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__MOMENTUM_OPTIMIZER_HPP_
