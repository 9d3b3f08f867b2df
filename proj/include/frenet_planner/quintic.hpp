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

#ifndef FRENET_PLANNER__QUINTIC_HPP_
#define FRENET_PLANNER__QUINTIC_HPP_

#include <array>

namespace frenet_planner
{

/// Monomial coefficients c0..c5 of a quintic in its own abscissa (time for
/// the longitudinal axis, longitudinal displacement for the lateral axis).
struct QuinticCoeffs
{
  std::array<double, 6> c{};

  friend bool operator==(const QuinticCoeffs &, const QuinticCoeffs &) = default;
};

/// Value, first and second derivative imposed at one end of the span.
struct BoundaryValue
{
  double value{0.0};
  double d1{0.0};
  double d2{0.0};
};

struct PolyEval
{
  double value{0.0};
  double d1{0.0};
  double d2{0.0};
  double d3{0.0};
};

/// Unique quintic matching value, slope and curvature at x = 0 and x = span.
/// Throws PlannerError(NonPositiveSpan) for span <= 0 and
/// PlannerError(IllConditioned) when the 6x6 system's 1-norm condition
/// estimate exceeds 1e12.
QuinticCoeffs solve_quintic(const BoundaryValue & start, const BoundaryValue & end, double span);

/// 1-norm condition number of the 6x6 boundary system for the given span.
double quintic_condition_estimate(double span);

/// Horner evaluation of the polynomial and its first three derivatives.
PolyEval eval_quintic(const QuinticCoeffs & coeffs, double x);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__QUINTIC_HPP_
