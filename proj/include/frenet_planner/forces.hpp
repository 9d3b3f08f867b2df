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

#ifndef FRENET_PLANNER__FORCES_HPP_
#define FRENET_PLANNER__FORCES_HPP_

#include "frenet_planner/frenet_geometry.hpp"

#include <span>
#include <vector>

namespace frenet_planner
{

/// Gaussian bump of the surface-irregularity profile beta(s).
struct SurfaceBump
{
  double s_center{0.0};
  double width{1.0};
  double amplitude{0.0};
};

struct AssistiveParams
{
  double v_des{1.0};
  double k_s{1.0};
  double k_d{0.1};
  double c_d{0.1};
  double f_bar{2.0};  ///< saturation bound on the assistive force norm
  std::vector<SurfaceBump> bumps;
};

struct InteractionParams
{
  double alpha_bar{1.0};
  double r0{1.0};
  double v0{1.0};
  double cutoff{5.0};
};

struct Neighbor
{
  Point2 position{Point2::Zero()};
  Vector2 velocity{Vector2::Zero()};
  double covariance_trace{0.0};
};

/// Throws PlannerError(ScenarioInvalid) naming the offending field.
void validate_assistive(const AssistiveParams & params);
void validate_interaction(const InteractionParams & params);

/// Sum of Gaussian bumps clipped to [0, 1], with its derivative in s
/// (zero where the clip is active).
struct BumpValue
{
  double beta{0.0};
  double dbeta_ds{0.0};
};
BumpValue surface_irregularity(std::span<const SurfaceBump> bumps, double s);

/// Assistive force in Frenet components (longitudinal, lateral), saturated to
/// norm f_bar.
Vector2 assistive_force(const FrenetState & state, const AssistiveParams & params);

/// Assistive force with its Jacobian with respect to (s, d, s_dot, d_dot).
struct AssistiveForceJacobian
{
  Vector2 force;
  Eigen::Matrix<double, 2, 4> jacobian;
};
AssistiveForceJacobian assistive_force_with_jacobian(
  const FrenetState & state, const AssistiveParams & params);

/// Interaction intensity alpha(r, dv) = min(alpha_bar, alpha_bar exp(-r/r0) (1 + dv/v0)).
double interaction_intensity(double distance, double relative_speed, const InteractionParams & params);

/// Repulsive interaction force in Cartesian components. Neighbors beyond the
/// cutoff contribute exactly zero. Throws PlannerError(CoincidentNeighbor)
/// when a neighbor within the cutoff sits on the agent.
Vector2 interaction_force(
  const Point2 & agent_position, const Vector2 & agent_velocity, std::span<const Neighbor> neighbors,
  const InteractionParams & params);

/// Interaction force with its Jacobians with respect to agent position and
/// agent velocity.
struct InteractionForceJacobian
{
  Vector2 force{Vector2::Zero()};
  Eigen::Matrix2d d_position{Eigen::Matrix2d::Zero()};
  Eigen::Matrix2d d_velocity{Eigen::Matrix2d::Zero()};
};
InteractionForceJacobian interaction_force_with_jacobian(
  const Point2 & agent_position, const Vector2 & agent_velocity, std::span<const Neighbor> neighbors,
  const InteractionParams & params);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__FORCES_HPP_
