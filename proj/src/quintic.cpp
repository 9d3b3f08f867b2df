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

#include "frenet_planner/quintic.hpp"

#include "frenet_planner/error.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>

namespace frenet_planner
{

namespace
{
constexpr double kMaxCondition = 1e12;

Eigen::Matrix<double, 6, 6> boundary_matrix(double span)
{
  const double t = span;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  const double t5 = t4 * t;
  Eigen::Matrix<double, 6, 6> m;
  m << 1, 0, 0, 0, 0, 0,
       0, 1, 0, 0, 0, 0,
       0, 0, 2, 0, 0, 0,
       1, t, t2, t3, t4, t5,
       0, 1, 2 * t, 3 * t2, 4 * t3, 5 * t4,
       0, 0, 2, 6 * t, 12 * t2, 20 * t3;
  return m;
}
}  // namespace

double quintic_condition_estimate(double span)
{
  const auto m = boundary_matrix(span);
  Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(m);
  if (!lu.isInvertible()) {
    return std::numeric_limits<double>::infinity();
  }
  const Eigen::Matrix<double, 6, 6> inv = lu.inverse();
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
  const double inv_norm = inv.cwiseAbs().colwise().sum().maxCoeff();
  const double cond = norm * inv_norm;
  return std::isfinite(cond) ? cond : std::numeric_limits<double>::infinity();
}

QuinticCoeffs solve_quintic(const BoundaryValue & start, const BoundaryValue & end, double span)
{
  if (!(span > 0.0)) {
    throw PlannerError(ErrorCode::NonPositiveSpan, "span = " + std::to_string(span));
  }
  const double cond = quintic_condition_estimate(span);
  if (!(cond <= kMaxCondition)) {
    throw PlannerError(
      ErrorCode::IllConditioned, "condition estimate " + std::to_string(cond) + " for span " +
      std::to_string(span));
  }

  // Closed-form solution of the upper 3x3 block after fixing c0..c2 from the
  // start conditions.
  const double t = span;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h = end.value - start.value;
  const double v0 = start.d1;
  const double v1 = end.d1;
  const double a0 = start.d2;
  const double a1 = end.d2;

  QuinticCoeffs q;
  q.c[0] = start.value;
  q.c[1] = v0;
  q.c[2] = 0.5 * a0;
  q.c[3] = (20.0 * h - (8.0 * v1 + 12.0 * v0) * t - (3.0 * a0 - a1) * t2) / (2.0 * t3);
  q.c[4] = (-30.0 * h + (14.0 * v1 + 16.0 * v0) * t + (3.0 * a0 - 2.0 * a1) * t2) / (2.0 * t3 * t);
  q.c[5] = (12.0 * h - 6.0 * (v1 + v0) * t + (a1 - a0) * t2) / (2.0 * t3 * t2);
  return q;
}

PolyEval eval_quintic(const QuinticCoeffs & q, double x)
{
  const auto & c = q.c;
  PolyEval r;
  r.value = c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * (c[4] + x * c[5]))));
  r.d1 = c[1] + x * (2.0 * c[2] + x * (3.0 * c[3] + x * (4.0 * c[4] + x * 5.0 * c[5])));
  r.d2 = 2.0 * c[2] + x * (6.0 * c[3] + x * (12.0 * c[4] + x * 20.0 * c[5]));
  r.d3 = 6.0 * c[3] + x * (24.0 * c[4] + x * 60.0 * c[5]);
  return r;
}

}  // namespace frenet_planner
