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

#include "frenet_planner/forces.hpp"

#include "frenet_planner/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace frenet_planner
{

namespace
{
constexpr double kCoincidentDistance = 1e-9;

void require(bool ok, const char * field, const char * rule)
{
  if (!ok) {
    throw PlannerError(ErrorCode::ScenarioInvalid, std::string(field) + " " + rule);
  }
}
}  // namespace

void validate_assistive(const AssistiveParams & p)
{
  require(std::isfinite(p.v_des), "assistive.v_des", "must be finite");
  require(p.k_s >= 0.0, "assistive.k_s", "must be >= 0");
  require(p.k_d >= 0.0, "assistive.k_d", "must be >= 0");
  require(p.c_d >= 0.0, "assistive.c_d", "must be >= 0");
  require(p.f_bar > 0.0, "assistive.f_bar", "must be > 0");
  for (const auto & b : p.bumps) {
    require(b.width > 0.0, "assistive.bumps.width", "must be > 0");
    require(b.amplitude >= 0.0 && b.amplitude <= 1.0, "assistive.bumps.amplitude", "must lie in [0, 1]");
  }
}

void validate_interaction(const InteractionParams & p)
{
  require(p.alpha_bar > 0.0, "interaction.alpha_bar", "must be > 0");
  require(p.r0 > 0.0, "interaction.r0", "must be > 0");
  require(p.v0 > 0.0, "interaction.v0", "must be > 0");
  require(p.cutoff > 0.0, "interaction.cutoff", "must be > 0");
}

BumpValue surface_irregularity(std::span<const SurfaceBump> bumps, double s)
{
  double beta = 0.0;
  double dbeta = 0.0;
  for (const auto & b : bumps) {
    const double z = (s - b.s_center) / b.width;
    const double g = b.amplitude * std::exp(-0.5 * z * z);
    beta += g;
    dbeta += -g * z / b.width;
  }
  if (beta >= 1.0) {
    return {1.0, 0.0};
  }
  return {beta, dbeta};
}

AssistiveForceJacobian assistive_force_with_jacobian(
  const FrenetState & x, const AssistiveParams & p)
{
  const BumpValue bump = surface_irregularity(p.bumps, x.s);
  const Vector2 raw(-p.k_s * (x.s_dot - p.v_des) * (1.0 + bump.beta), -p.k_d * x.d - p.c_d * x.d_dot);

  // columns: s, d, s_dot, d_dot
  Eigen::Matrix<double, 2, 4> j_raw;
  j_raw << -p.k_s * (x.s_dot - p.v_des) * bump.dbeta_ds, 0.0, -p.k_s * (1.0 + bump.beta), 0.0,
           0.0, -p.k_d, 0.0, -p.c_d;

  const double norm = raw.norm();
  if (norm <= p.f_bar) {
    return {raw, j_raw};
  }
  const Vector2 unit = raw / norm;
  const Eigen::Matrix2d proj = Eigen::Matrix2d::Identity() - unit * unit.transpose();
  return {p.f_bar * unit, (p.f_bar / norm) * proj * j_raw};
}

Vector2 assistive_force(const FrenetState & state, const AssistiveParams & params)
{
  return assistive_force_with_jacobian(state, params).force;
}

double interaction_intensity(double distance, double relative_speed, const InteractionParams & p)
{
  return std::min(p.alpha_bar, p.alpha_bar * std::exp(-distance / p.r0) * (1.0 + relative_speed / p.v0));
}

InteractionForceJacobian interaction_force_with_jacobian(
  const Point2 & agent_position, const Vector2 & agent_velocity, std::span<const Neighbor> neighbors,
  const InteractionParams & p)
{
  InteractionForceJacobian out;
  for (const Neighbor & nb : neighbors) {
    const Vector2 offset = agent_position - nb.position;
    const double r = offset.norm();
    if (r > p.cutoff) {
      continue;
    }
    if (r < kCoincidentDistance) {
      throw PlannerError(ErrorCode::CoincidentNeighbor, "neighbor coincides with the agent");
    }
    const Vector2 n = offset / r;
    const Vector2 rel = agent_velocity - nb.velocity;
    const double dv = rel.norm();
    const double decay = std::exp(-r / p.r0);
    const double raw = p.alpha_bar * decay * (1.0 + dv / p.v0);
    const bool saturated = raw >= p.alpha_bar;
    const double alpha = saturated ? p.alpha_bar : raw;

    out.force += alpha * n;
    const Eigen::Matrix2d dn_dx = (Eigen::Matrix2d::Identity() - n * n.transpose()) / r;
    out.d_position += alpha * dn_dx;
    if (!saturated) {
      const double dalpha_dr = -raw / p.r0;
      out.d_position += dalpha_dr * n * n.transpose();
      if (dv > 1e-12) {
        const double dalpha_ddv = p.alpha_bar * decay / p.v0;
        out.d_velocity += dalpha_ddv * n * (rel / dv).transpose();
      }
    }
  }
  return out;
}

Vector2 interaction_force(
  const Point2 & agent_position, const Vector2 & agent_velocity, std::span<const Neighbor> neighbors,
  const InteractionParams & params)
{
  return interaction_force_with_jacobian(agent_position, agent_velocity, neighbors, params).force;
}

}  // namespace frenet_planner
