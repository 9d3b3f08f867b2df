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

#include "frenet_planner/frenet_geometry.hpp"

#include "frenet_planner/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace frenet_planner
{

namespace
{
constexpr double kRangeTolerance = 1e-9;
constexpr std::size_t kCoarseSamples = 512;
constexpr double kAmbiguityTolerance = 1e-3;
constexpr double kDistinctMinimumSeparation = 1e-6;
}  // namespace

bool FrenetState::is_finite() const
{
  for (double v : as_array()) {
    if (!std::isfinite(v)) {
      return false;
    }
  }
  return true;
}

double state_distance(const FrenetState & a, const FrenetState & b)
{
  const auto x = a.as_array();
  const auto y = b.as_array();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += (x[i] - y[i]) * (x[i] - y[i]);
  }
  return std::sqrt(sum);
}

namespace detail
{

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> knots, std::vector<double> values)
: knots_(std::move(knots)), values_(std::move(values)), second_(knots_.size(), 0.0)
{
  const std::size_t n = knots_.size();
  if (n < 3) {
    return;
  }
  // Thomas algorithm on the interior rows; natural ends keep M_0 = M_{n-1} = 0.
  std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = knots_[i] - knots_[i - 1];
    const double h1 = knots_[i + 1] - knots_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((values_[i + 1] - values_[i]) / h1 - (values_[i] - values_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = knots_[i] - knots_[i - 1];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];
  }
}

std::size_t NaturalCubicSpline::segment_of(double u) const
{
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
  std::size_t idx = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(idx, knots_.size() - 2);
}

std::array<double, 4> NaturalCubicSpline::evaluate(std::size_t i, double u) const
{
  const double h = knots_[i + 1] - knots_[i];
  const double a = (knots_[i + 1] - u) / h;
  const double b = (u - knots_[i]) / h;
  const double m0 = second_[i];
  const double m1 = second_[i + 1];
  const double y0 = values_[i];
  const double y1 = values_[i + 1];
  return {
    a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0,
    (y1 - y0) / h - (3.0 * a * a - 1.0) / 6.0 * h * m0 + (3.0 * b * b - 1.0) / 6.0 * h * m1,
    a * m0 + b * m1,
    (m1 - m0) / h};
}

}  // namespace detail

double ReferencePath::speed_at(std::size_t segment, double u) const
{
  const double dx = x_spline_.evaluate(segment, u)[1];
  const double dy = y_spline_.evaluate(segment, u)[1];
  return std::sqrt(dx * dx + dy * dy);
}

double ReferencePath::segment_arc(std::size_t segment, double u0, double u1) const
{
  auto integrand = [this, segment](double u) { return speed_at(segment, u); };
  return boost::math::quadrature::gauss<double, 5>::integrate(integrand, u0, u1);
}

ReferencePath ReferencePath::from_waypoints(std::span<const Point2> waypoints)
{
  if (waypoints.size() < 4) {
    throw PlannerError(
      ErrorCode::TooFewWaypoints,
      "need at least 4 waypoints, got " + std::to_string(waypoints.size()));
  }
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if ((waypoints[i] - waypoints[i - 1]).norm() <= 1e-12) {
      throw PlannerError(
        ErrorCode::DuplicateWaypoint, "waypoints " + std::to_string(i - 1) + " and " +
        std::to_string(i) + " coincide");
    }
  }

  ReferencePath path;
  path.waypoints_.assign(waypoints.begin(), waypoints.end());
  const std::size_t n = waypoints.size();
  std::vector<double> xs(n), ys(n), knots(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = waypoints[i].x();
    ys[i] = waypoints[i].y();
    if (i > 0) {
      knots[i] = knots[i - 1] + (waypoints[i] - waypoints[i - 1]).norm();
    }
  }

  auto fit = [&](const std::vector<double> & k) {
    path.x_spline_ = detail::NaturalCubicSpline(k, xs);
    path.y_spline_ = detail::NaturalCubicSpline(k, ys);
  };
  auto measure = [&]() {
    // Adaptive Gauss-Kronrod per segment, relative tolerance far below 1e-6.
    const auto & k = path.x_spline_.knots();
    std::vector<double> lengths(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      auto integrand = [&path, i](double u) { return path.speed_at(i, u); };
      lengths[i] = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, k[i], k[i + 1], 15, 1e-12);
    }
    return lengths;
  };

  // Fit on chord length, measure true arc length, refit once on it.
  fit(knots);
  auto lengths = measure();
  for (std::size_t i = 1; i < n; ++i) {
    knots[i] = knots[i - 1] + lengths[i - 1];
  }
  fit(knots);
  lengths = measure();

  path.arc_length_knots_.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    path.arc_length_knots_[i] = path.arc_length_knots_[i - 1] + lengths[i - 1];
  }

  constexpr std::size_t kSub = kTableSubdivisions;
  path.table_arc_.assign((n - 1) * (kSub + 1), 0.0);
  path.table_param_.assign((n - 1) * (kSub + 1), 0.0);
  path.table_slope_.assign((n - 1) * (kSub + 1), 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double u0 = knots[i];
    const double h = knots[i + 1] - knots[i];
    double acc = 0.0;
    double prev = u0;
    for (std::size_t j = 0; j <= kSub; ++j) {
      const double u = j == kSub ? knots[i + 1] : u0 + h * static_cast<double>(j) / kSub;
      if (j > 0) {
        acc += path.segment_arc(i, prev, u);
      }
      path.table_arc_[i * (kSub + 1) + j] = acc;
      path.table_param_[i * (kSub + 1) + j] = u;
      path.table_slope_[i * (kSub + 1) + j] = 1.0 / path.speed_at(i, u);
      prev = u;
    }
    // pin the table end to the adaptive measurement
    path.table_arc_[i * (kSub + 1) + kSub] = lengths[i];
  }
  return path;
}

double ReferencePath::parameter_at(double s, std::size_t & segment) const
{
  const auto & arcs = arc_length_knots_;
  const auto it = std::upper_bound(arcs.begin(), arcs.end(), s);
  std::size_t i = it == arcs.begin() ? 0 : static_cast<std::size_t>(it - arcs.begin()) - 1;
  i = std::min(i, arcs.size() - 2);
  segment = i;

  constexpr std::size_t kSub = kTableSubdivisions;
  const double local = s - arcs[i];
  const double * tab_arc = &table_arc_[i * (kSub + 1)];
  const double * tab_par = &table_param_[i * (kSub + 1)];
  std::size_t j = static_cast<std::size_t>(std::upper_bound(tab_arc, tab_arc + kSub + 1, local) - tab_arc);
  j = j == 0 ? 0 : std::min(j - 1, kSub - 1);

  const double * tab_slope = &table_slope_[i * (kSub + 1)];
  const double h = tab_arc[j + 1] - tab_arc[j];
  const double tau = std::clamp((local - tab_arc[j]) / h, 0.0, 1.0);
  const double tau2 = tau * tau;
  const double tau3 = tau2 * tau;
  const double u = (2.0 * tau3 - 3.0 * tau2 + 1.0) * tab_par[j] +
                   (tau3 - 2.0 * tau2 + tau) * h * tab_slope[j] +
                   (-2.0 * tau3 + 3.0 * tau2) * tab_par[j + 1] +
                   (tau3 - tau2) * h * tab_slope[j + 1];
  return u;
}

PathFrame ReferencePath::frame(double s) const
{
  const double length = total_length();
  if (!(s >= -kRangeTolerance && s <= length + kRangeTolerance)) {
    throw PlannerError(
      ErrorCode::OutOfRangeS,
      "s = " + std::to_string(s) + " outside [0, " + std::to_string(length) + "]");
  }
  s = std::clamp(s, 0.0, length);
  std::size_t seg = 0;
  const double u = parameter_at(s, seg);
  const auto x = x_spline_.evaluate(seg, u);
  const auto y = y_spline_.evaluate(seg, u);

  const double speed_sq = x[1] * x[1] + y[1] * y[1];
  const double speed = std::sqrt(speed_sq);
  const double cross = x[1] * y[2] - y[1] * x[2];
  const double dot = x[1] * x[2] + y[1] * y[2];
  const double speed_cubed = speed_sq * speed;

  PathFrame f;
  f.position = Point2(x[0], y[0]);
  f.tangent = Vector2(x[1], y[1]) / speed;
  f.normal = Vector2(-f.tangent.y(), f.tangent.x());
  f.kappa = cross / speed_cubed;
  const double dkappa_du =
    (x[1] * y[3] - y[1] * x[3]) / speed_cubed - 3.0 * cross * dot / (speed_cubed * speed_sq);
  f.dkappa = dkappa_du / speed;
  return f;
}

Point2 ReferencePath::to_cartesian(double s, double d) const
{
  const PathFrame f = frame(s);
  if (std::abs(d) * std::abs(f.kappa) >= 1.0) {
    throw PlannerError(
      ErrorCode::InvalidLateralOffset, "|d * kappa| >= 1 at s = " + std::to_string(s) +
      " (d = " + std::to_string(d) + ", kappa = " + std::to_string(f.kappa) + ")");
  }
  return f.position + d * f.normal;
}

double ReferencePath::refine_projection(
  const Point2 & point, double lo, double hi, double guess) const
{
  // Root of g(s) = (p - r(s)).t(s); distance decreases while g > 0.
  auto g_and_dg = [&](double s) {
    const PathFrame f = frame(s);
    const Vector2 diff = point - f.position;
    return std::pair<double, double>{diff.dot(f.tangent), -1.0 + f.kappa * diff.dot(f.normal)};
  };
  const double g_lo = g_and_dg(lo).first;
  const double g_hi = g_and_dg(hi).first;
  if (g_lo <= 0.0 && g_hi <= 0.0) {
    return lo;
  }
  if (g_lo >= 0.0 && g_hi >= 0.0) {
    return hi;
  }
  double a = lo;
  double b = hi;
  double s = std::clamp(guess, a, b);
  for (int iter = 0; iter < 100; ++iter) {
    const auto [g, dg] = g_and_dg(s);
    if (g == 0.0) {
      return s;
    }
    if (g > 0.0) {
      a = s;
    } else {
      b = s;
    }
    double next = dg != 0.0 ? s - g / dg : 0.5 * (a + b);
    if (!(next > a && next < b)) {
      next = 0.5 * (a + b);
    }
    if (std::abs(next - s) < 1e-14 * std::max(1.0, std::abs(s)) || b - a < 1e-14) {
      return next;
    }
    s = next;
  }
  return s;
}

FrenetPoint ReferencePath::to_frenet(const Point2 & point) const
{
  const double length = total_length();
  const double step = length / static_cast<double>(kCoarseSamples);
  std::vector<double> dist2(kCoarseSamples + 1);
  for (std::size_t k = 0; k <= kCoarseSamples; ++k) {
    dist2[k] = (point - position(std::min(length, step * static_cast<double>(k)))).squaredNorm();
  }

  struct Minimum
  {
    double s;
    double distance;
  };
  std::vector<Minimum> minima;
  for (std::size_t k = 0; k <= kCoarseSamples; ++k) {
    const bool left_ok = k == 0 || dist2[k] <= dist2[k - 1];
    const bool right_ok = k == kCoarseSamples || dist2[k] <= dist2[k + 1];
    if (!(left_ok && right_ok)) {
      continue;
    }
    const double lo = k == 0 ? 0.0 : step * static_cast<double>(k - 1);
    const double hi = k == kCoarseSamples ? length : std::min(length, step * static_cast<double>(k + 1));
    const double s = refine_projection(point, lo, hi, std::min(length, step * static_cast<double>(k)));
    const double distance = (point - position(s)).norm();
    const bool duplicate = std::any_of(minima.begin(), minima.end(), [&](const Minimum & m) {
      return std::abs(m.s - s) <= kDistinctMinimumSeparation;
    });
    if (!duplicate) {
      minima.push_back({s, distance});
    }
  }

  // smallest distance first; ties resolved toward smaller s
  std::sort(minima.begin(), minima.end(), [](const Minimum & a, const Minimum & b) {
    return a.distance != b.distance ? a.distance < b.distance : a.s < b.s;
  });
  const Minimum best = minima.front();
  if (minima.size() > 1 && minima[1].distance - best.distance < kAmbiguityTolerance) {
    throw PlannerError(
      ErrorCode::ProjectionAmbiguous, "projections at s = " + std::to_string(best.s) + " and s = " +
      std::to_string(minima[1].s) + " are equidistant within 1e-3 m");
  }

  const PathFrame f = frame(best.s);
  const Vector2 diff = point - f.position;
  const double along = diff.dot(f.tangent);
  const double d = diff.dot(f.normal);
  if (std::abs(along) > 1e-6 || std::abs(d) * std::abs(f.kappa) >= 1.0) {
    throw PlannerError(ErrorCode::OutsideTube, "point lies outside the path's validity tube");
  }
  return {best.s, d};
}

ReferencePath build_reference_path(std::span<const Point2> waypoints)
{
  return ReferencePath::from_waypoints(waypoints);
}

Point2 frenet_to_cartesian(const ReferencePath & path, double s, double d)
{
  return path.to_cartesian(s, d);
}

FrenetPoint cartesian_to_frenet(const ReferencePath & path, const Point2 & point)
{
  return path.to_frenet(point);
}

double curvature_at(const ReferencePath & path, double s)
{
  return path.curvature(s);
}

}  // namespace frenet_planner
