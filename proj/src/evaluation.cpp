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

#include "frenet_planner/evaluation.hpp"

#include "frenet_planner/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace frenet_planner
{

namespace
{

void raise(ErrorCode code, const std::string & detail)
{
  throw PlannerError(code, detail);
}

double cross(const Vector2 & a, const Vector2 & b)
{
  return a.x() * b.y() - a.y() * b.x();
}

double quantile(const std::vector<double> & sorted, double q)
{
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double f = pos - static_cast<double>(lo);
  return sorted[lo] + f * (sorted[hi] - sorted[lo]);
}

void record(FeasibilityReport & report, Constraint c, double ratio)
{
  const auto k = static_cast<std::size_t>(c);
  report.worst_margins[k] = std::max(report.worst_margins[k], ratio);
}

}  // namespace

std::string_view to_string(Constraint constraint)
{
  switch (constraint) {
    case Constraint::Velocity: return "Velocity";
    case Constraint::Acceleration: return "Acceleration";
    case Constraint::Jerk: return "Jerk";
    case Constraint::Curvature: return "Curvature";
    case Constraint::YawRate: return "YawRate";
    case Constraint::CurvatureRate: return "CurvatureRate";
  }
  return "Unknown";
}

void validate_limits(const KinematicLimits & limits)
{
  const std::array<std::pair<const char *, double>, 6> fields{{
    {"limits.v_max", limits.v_max},
    {"limits.a_max", limits.a_max},
    {"limits.j_max", limits.j_max},
    {"limits.kappa_max", limits.kappa_max},
    {"limits.yaw_rate_max", limits.yaw_rate_max},
    {"limits.kappa_rate_max", limits.kappa_rate_max},
  }};
  for (const auto & [name, value] : fields) {
    if (!(std::isfinite(value) && value > 0.0)) {
      raise(ErrorCode::ScenarioInvalid, std::string(name) + " must be positive");
    }
  }
}

FeasibilityReport check_candidate(
  const TrajectoryCandidate & candidate, const ReferencePath & path,
  const KinematicLimits & limits)
{
  const auto & samples = candidate.samples;
  if (samples.size() < 4) {
    raise(ErrorCode::EmptyInput, "feasibility check needs at least four samples");
  }
  const double dt = candidate.dt;
  if (!(dt > 0.0)) {
    raise(ErrorCode::InvalidGrid, "candidate dt must be positive");
  }
  const std::size_t n = samples.size();
  FeasibilityReport report;

  std::vector<Point2> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const FrenetState & st = samples[i].state;
    const PathFrame fr = path.frame(std::clamp(st.s, 0.0, path.total_length()));
    const double scale = 1.0 - fr.kappa * st.d;
    if (scale <= 0.0) {
      report.lateral_offset_invalid = true;
    }
    x[i] = fr.position + st.d * fr.normal;
    const double speed = std::hypot(scale * st.s_dot, st.d_dot);
    record(report, Constraint::Velocity, speed / limits.v_max);
    record(
      report, Constraint::Acceleration,
      std::max(std::abs(st.s_ddot), std::abs(st.d_ddot)) / limits.a_max);
    record(
      report, Constraint::Jerk,
      std::max(std::abs(samples[i].s_jerk), std::abs(samples[i].d_jerk)) / limits.j_max);
  }

  // Cartesian derivatives: central stencils inside, second-order one-sided at the ends.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> kappa(n, nan);
  std::vector<double> speed(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    Vector2 v;
    Vector2 a;
    if (i == 0) {
      v = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * dt);
      a = (2.0 * x[0] - 5.0 * x[1] + 4.0 * x[2] - x[3]) / (dt * dt);
    } else if (i == n - 1) {
      v = (3.0 * x[i] - 4.0 * x[i - 1] + x[i - 2]) / (2.0 * dt);
      a = (2.0 * x[i] - 5.0 * x[i - 1] + 4.0 * x[i - 2] - x[i - 3]) / (dt * dt);
    } else {
      v = (x[i + 1] - x[i - 1]) / (2.0 * dt);
      a = (x[i + 1] - 2.0 * x[i] + x[i - 1]) / (dt * dt);
    }
    speed[i] = v.norm();
    if (speed[i] < kDegenerateSpeed) {
      report.degenerate_samples.push_back(i);
      continue;
    }
    kappa[i] = cross(v, a) / (speed[i] * speed[i] * speed[i]);
    record(report, Constraint::Curvature, std::abs(kappa[i]) / limits.kappa_max);
    record(report, Constraint::YawRate, std::abs(kappa[i]) * speed[i] / limits.yaw_rate_max);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(kappa[i])) {
      continue;
    }
    const bool has_prev = i > 0 && !std::isnan(kappa[i - 1]);
    const bool has_next = i + 1 < n && !std::isnan(kappa[i + 1]);
    double rate = 0.0;
    if (has_prev && has_next) {
      rate = (kappa[i + 1] - kappa[i - 1]) / (2.0 * dt);
    } else if (has_next) {
      rate = (kappa[i + 1] - kappa[i]) / dt;
    } else if (has_prev) {
      rate = (kappa[i] - kappa[i - 1]) / dt;
    } else {
      continue;
    }
    record(report, Constraint::CurvatureRate, std::abs(rate) / limits.kappa_rate_max);
  }

  for (const Constraint c : kAllConstraints) {
    const auto k = static_cast<std::size_t>(c);
    report.violations[k] = report.worst_margins[k] > 1.0;
  }
  if (report.lateral_offset_invalid) {
    report.violations[static_cast<std::size_t>(Constraint::Curvature)] = true;
    record(report, Constraint::Curvature, std::nextafter(1.0, 2.0));
  }
  report.feasible = std::none_of(
    report.violations.begin(), report.violations.end(), [](bool v) { return v; });
  return report;
}

ClusterStats nn_distance_stats(std::span<const FrenetState> terminals)
{
  if (terminals.size() < 2) {
    raise(ErrorCode::TooFewEndpoints, "nearest-neighbor statistics need two endpoints");
  }
  ClusterStats stats;
  stats.nn_distances.reserve(terminals.size());
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < terminals.size(); ++j) {
      if (i != j) {
        best = std::min(best, state_distance(terminals[i], terminals[j]));
      }
    }
    stats.nn_distances.push_back(best);
  }
  const auto count = static_cast<double>(stats.nn_distances.size());
  double sum = 0.0;
  for (const double v : stats.nn_distances) {
    sum += v;
  }
  stats.nn_mean = sum / count;
  double var = 0.0;
  for (const double v : stats.nn_distances) {
    var += (v - stats.nn_mean) * (v - stats.nn_mean);
  }
  stats.nn_std = std::sqrt(var / count);
  const auto [lo, hi] = std::minmax_element(stats.nn_distances.begin(), stats.nn_distances.end());
  stats.nn_min = *lo;
  stats.nn_max = *hi;
  // rounding in the mean must not break min <= mean <= max
  stats.nn_mean = std::clamp(stats.nn_mean, stats.nn_min, stats.nn_max);
  return stats;
}

ClusterStats nn_distance_stats(const TrajectoryCluster & cluster)
{
  std::vector<FrenetState> terminals;
  terminals.reserve(cluster.candidates.size());
  for (const auto & c : cluster.candidates) {
    terminals.push_back(c.terminal);
  }
  return nn_distance_stats(terminals);
}

AxisStats summarize_magnitudes(std::span<const double> values)
{
  AxisStats stats;
  if (values.empty()) {
    return stats;
  }
  std::vector<double> mags;
  mags.reserve(values.size());
  double sq = 0.0;
  for (const double v : values) {
    mags.push_back(std::abs(v));
    sq += v * v;
  }
  std::sort(mags.begin(), mags.end());
  stats.median = quantile(mags, 0.5);
  stats.iqr = quantile(mags, 0.75) - quantile(mags, 0.25);
  stats.rms = std::sqrt(sq / static_cast<double>(values.size()));
  stats.max = mags.back();
  return stats;
}

JerkStats jerk_statistics(std::span<const TrajectorySample> samples)
{
  JerkStats stats;
  stats.longitudinal.reserve(samples.size());
  stats.lateral.reserve(samples.size());
  stats.profile.reserve(samples.size());
  for (const TrajectorySample & sample : samples) {
    stats.longitudinal.push_back(sample.s_jerk);
    stats.lateral.push_back(sample.d_jerk);
    const FrenetState & st = sample.state;
    stats.profile.push_back(
      {sample.t, st.s, st.d, st.s_dot, st.s_ddot, sample.s_jerk, st.d_dot, st.d_ddot,
       sample.d_jerk});
  }
  stats.lon = summarize_magnitudes(stats.longitudinal);
  stats.lat = summarize_magnitudes(stats.lateral);
  return stats;
}

JerkStats jerk_statistics(const TrajectoryCandidate & candidate)
{
  return jerk_statistics(std::span<const TrajectorySample>(candidate.samples));
}

FeasibilityBreakdown feasibility_breakdown(std::span<const FeasibilityReport> reports)
{
  if (reports.empty()) {
    raise(ErrorCode::EmptyInput, "no feasibility reports");
  }
  FeasibilityBreakdown out;
  out.total = reports.size();
  std::size_t feasible = 0;
  std::array<std::size_t, kConstraintCount> counts{};
  for (const FeasibilityReport & r : reports) {
    feasible += r.feasible ? 1 : 0;
    for (std::size_t k = 0; k < kConstraintCount; ++k) {
      counts[k] += r.violations[k] ? 1 : 0;
    }
  }
  const auto total = static_cast<double>(out.total);
  out.overall = static_cast<double>(feasible) / total;
  for (std::size_t k = 0; k < kConstraintCount; ++k) {
    out.rates[k] = static_cast<double>(counts[k]) / total;
  }
  return out;
}

}  // namespace frenet_planner
