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

#ifndef FRENET_PLANNER__FRENET_GEOMETRY_HPP_
#define FRENET_PLANNER__FRENET_GEOMETRY_HPP_

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace frenet_planner
{

using Point2 = Eigen::Vector2d;
using Vector2 = Eigen::Vector2d;

/// Frenet state [s, s_dot, s_ddot, d, d_dot, d_ddot]. Lateral rates are time
/// derivatives.
struct FrenetState
{
  double s{0.0};
  double s_dot{0.0};
  double s_ddot{0.0};
  double d{0.0};
  double d_dot{0.0};
  double d_ddot{0.0};

  std::array<double, 6> as_array() const { return {s, s_dot, s_ddot, d, d_dot, d_ddot}; }
  bool is_finite() const;

  friend bool operator==(const FrenetState &, const FrenetState &) = default;
};

/// Euclidean distance between two states, all six components in SI units.
double state_distance(const FrenetState & a, const FrenetState & b);

struct FrenetPoint
{
  double s{0.0};
  double d{0.0};
};

/// Geometric quantities of the reference path at one arc length.
struct PathFrame
{
  Point2 position;
  Vector2 tangent;
  Vector2 normal;     ///< tangent rotated by +90 degrees
  double kappa{0.0};  ///< signed curvature, positive when turning left
  double dkappa{0.0}; ///< d(kappa)/ds
};

namespace detail
{
/// Natural cubic spline of one coordinate over a strictly increasing knot
/// vector.
class NaturalCubicSpline
{
public:
  NaturalCubicSpline() = default;
  NaturalCubicSpline(std::vector<double> knots, std::vector<double> values);

  /// Value and first three derivatives at u on the given segment.
  std::array<double, 4> evaluate(std::size_t segment, double u) const;
  std::size_t segment_of(double u) const;
  const std::vector<double> & knots() const { return knots_; }

private:
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> second_;
};
}  // namespace detail

/// Reference curve r(s) parameterized by arc length. Immutable once built;
/// all queries are const and safe to share between threads.
class ReferencePath
{
public:
  /// Throws PlannerError(TooFewWaypoints | DuplicateWaypoint).
  static ReferencePath from_waypoints(std::span<const Point2> waypoints);

  double total_length() const { return arc_length_knots_.back(); }
  const std::vector<Point2> & waypoints() const { return waypoints_; }
  const std::vector<double> & arc_length_knots() const { return arc_length_knots_; }

  /// Full frame at s. Throws OutOfRangeS.
  PathFrame frame(double s) const;
  Point2 position(double s) const { return frame(s).position; }
  Vector2 tangent(double s) const { return frame(s).tangent; }
  Vector2 normal(double s) const { return frame(s).normal; }
  double curvature(double s) const { return frame(s).kappa; }

  /// r(s) + d * n(s). Throws OutOfRangeS or InvalidLateralOffset.
  Point2 to_cartesian(double s, double d) const;

  /// Closest-point projection. Throws ProjectionAmbiguous or OutsideTube.
  FrenetPoint to_frenet(const Point2 & point) const;

private:
  ReferencePath() = default;

  // spline parameter u corresponding to arc length s
  double parameter_at(double s, std::size_t & segment) const;
  double speed_at(std::size_t segment, double u) const;
  double segment_arc(std::size_t segment, double u0, double u1) const;
  double refine_projection(const Point2 & point, double lo, double hi, double guess) const;

  std::vector<Point2> waypoints_;
  std::vector<double> arc_length_knots_;
  detail::NaturalCubicSpline x_spline_;
  detail::NaturalCubicSpline y_spline_;

  // per-segment (arc length, parameter, d parameter / d arc length) nodes;
  // the inversion is a cubic Hermite interpolant between them
  static constexpr std::size_t kTableSubdivisions = 64;
  std::vector<double> table_arc_;
  std::vector<double> table_param_;
  std::vector<double> table_slope_;
};

ReferencePath build_reference_path(std::span<const Point2> waypoints);
Point2 frenet_to_cartesian(const ReferencePath & path, double s, double d);
FrenetPoint cartesian_to_frenet(const ReferencePath & path, const Point2 & point);
double curvature_at(const ReferencePath & path, double s);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__FRENET_GEOMETRY_HPP_
