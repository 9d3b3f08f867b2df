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

#ifndef FRENET_PLANNER__EVALUATION_HPP_
#define FRENET_PLANNER__EVALUATION_HPP_

#include "frenet_planner/frenet_geometry.hpp"
#include "frenet_planner/trajectory.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace frenet_planner
{

enum class Constraint : std::size_t
{
  Velocity = 0,
  Acceleration,
  Jerk,
  Curvature,
  YawRate,
  CurvatureRate,
};
inline constexpr std::size_t kConstraintCount = 6;
inline constexpr std::array<Constraint, kConstraintCount> kAllConstraints{
  Constraint::Velocity, Constraint::Acceleration, Constraint::Jerk,
  Constraint::Curvature, Constraint::YawRate, Constraint::CurvatureRate};

std::string_view to_string(Constraint constraint);

struct KinematicLimits
{
  double v_max{2.0};
  double a_max{1.5};
  double j_max{4.0};
  double kappa_max{1.0};
  double yaw_rate_max{1.0};
  double kappa_rate_max{2.0};  ///< per second
};

/// Throws PlannerError(ScenarioInvalid) naming the offending field.
void validate_limits(const KinematicLimits & limits);

/// Samples slower than this have no usable trajectory curvature.
inline constexpr double kDegenerateSpeed = 0.05;

struct FeasibilityReport
{
  bool feasible{true};
  std::array<bool, kConstraintCount> violations{};
  std::array<double, kConstraintCount> worst_margins{};  ///< max |value| / limit
  std::vector<std::size_t> degenerate_samples;  ///< curvature checks skipped here
  bool lateral_offset_invalid{false};           ///< some sample beyond the path's tube

  bool violates(Constraint c) const { return violations[static_cast<std::size_t>(c)]; }
  double margin(Constraint c) const { return worst_margins[static_cast<std::size_t>(c)]; }
};

/// Speed and accelerations come from the sampled Frenet states, jerk per
/// Frenet axis from the stored jerk, and curvature, yaw rate and curvature
/// rate from finite differences of the Cartesian samples. A sample whose
/// lateral offset leaves the path's tube counts as a Curvature violation.
FeasibilityReport check_candidate(
  const TrajectoryCandidate & candidate, const ReferencePath & path,
  const KinematicLimits & limits);

struct ClusterStats
{
  double nn_mean{0.0};
  double nn_std{0.0};  ///< population
  double nn_min{0.0};
  double nn_max{0.0};
  std::vector<double> nn_distances;
};

/// Nearest-neighbor statistics of terminal 6-vectors (unweighted Euclidean).
/// Throws PlannerError(TooFewEndpoints) below two terminals.
ClusterStats nn_distance_stats(std::span<const FrenetState> terminals);
ClusterStats nn_distance_stats(const TrajectoryCluster & cluster);

/// Summary of the magnitudes |x| of a series. Quartiles interpolate linearly
/// between order statistics.
struct AxisStats
{
  double median{0.0};
  double iqr{0.0};
  double rms{0.0};
  double max{0.0};
};
AxisStats summarize_magnitudes(std::span<const double> values);

struct ProfilePoint
{
  double t{0.0};
  double s{0.0};
  double d{0.0};
  double s_dot{0.0};
  double s_ddot{0.0};
  double s_jerk{0.0};
  double d_dot{0.0};
  double d_ddot{0.0};
  double d_jerk{0.0};
};

struct JerkStats
{
  std::vector<double> longitudinal;
  std::vector<double> lateral;
  AxisStats lon;
  AxisStats lat;
  std::vector<ProfilePoint> profile;
};

JerkStats jerk_statistics(const TrajectoryCandidate & candidate);
/// Statistics over a sample series, e.g. an executed multi-cycle trajectory.
JerkStats jerk_statistics(std::span<const TrajectorySample> samples);

struct FeasibilityBreakdown
{
  std::size_t total{0};
  double overall{0.0};  ///< feasible fraction
  std::array<double, kConstraintCount> rates{};  ///< violating fraction, multi-label

  double rate(Constraint c) const { return rates[static_cast<std::size_t>(c)]; }
};

/// Throws PlannerError(EmptyInput) on an empty list.
FeasibilityBreakdown feasibility_breakdown(std::span<const FeasibilityReport> reports);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__EVALUATION_HPP_
