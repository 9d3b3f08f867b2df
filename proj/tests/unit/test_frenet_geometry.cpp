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


#include "frenet_planner/error.hpp"
#include "frenet_planner/frenet_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace fp = frenet_planner;

namespace
{

std::vector<fp::Point2> straight_line(double length, int n)
{
  std::vector<fp::Point2> pts;
  for (int i = 0; i < n; ++i) {
    pts.emplace_back(length * i / (n - 1), 0.0);
  }
  return pts;
}

// counter-clockwise arc of `radius` around the origin
std::vector<fp::Point2> arc(double radius, double sweep, int n)
{
  std::vector<fp::Point2> pts;
  for (int i = 0; i < n; ++i) {
    const double a = -std::numbers::pi / 2 + sweep * i / (n - 1);
    pts.emplace_back(radius * std::cos(a), radius * std::sin(a));
  }
  return pts;
}

template <class F>
fp::ErrorCode code_of(F && f)
{
  try {
    f();
  } catch (const fp::PlannerError & e) {
    return e.code();
  }
  ADD_FAILURE() << "no PlannerError";
  return fp::ErrorCode::EmptyInput;
}

}  // namespace

TEST(FrenetGeometry, StraightLineFrame)
{
  const auto path = fp::build_reference_path(straight_line(20.0, 5));
  EXPECT_NEAR(path.total_length(), 20.0, 1e-9);
  const auto f = path.frame(7.5);
  EXPECT_NEAR(f.position.x(), 7.5, 1e-9);
  EXPECT_NEAR(f.position.y(), 0.0, 1e-12);
  EXPECT_NEAR(f.tangent.x(), 1.0, 1e-12);
  EXPECT_NEAR(f.normal.y(), 1.0, 1e-12);
  EXPECT_NEAR(f.kappa, 0.0, 1e-12);
  const auto p = fp::frenet_to_cartesian(path, 7.5, -1.25);
  EXPECT_NEAR(p.x(), 7.5, 1e-9);
  EXPECT_NEAR(p.y(), -1.25, 1e-9);
}

TEST(FrenetGeometry, ArcCurvatureAndLength)
{
  const double R = 10.0;
  const double sweep = std::numbers::pi / 2;
  const auto path = fp::build_reference_path(arc(R, sweep, 25));
  EXPECT_NEAR(path.total_length(), R * sweep, 1e-3);
  // the natural end conditions pull curvature to zero at the ends
  for (double frac : {0.3, 0.5, 0.7}) {
    const double s = frac * path.total_length();
    EXPECT_NEAR(fp::curvature_at(path, s), 1.0 / R, 2e-3) << s;
  }
}

TEST(FrenetGeometry, RightTurnHasNegativeCurvature)
{
  auto pts = arc(8.0, std::numbers::pi / 2, 20);
  for (auto & p : pts) {
    p.y() = -p.y();
  }
  const auto path = fp::build_reference_path(pts);
  EXPECT_LT(path.curvature(0.5 * path.total_length()), 0.0);
}

TEST(FrenetGeometry, UnitSpeedParameterization)
{
  const std::vector<fp::Point2> pts{{0, 0}, {5, 1}, {10, -1}, {15, 2}, {22, 0}};
  const auto path = fp::build_reference_path(pts);
  const double h = 1e-4;
  for (double s = h; s < path.total_length() - h; s += 0.37) {
    const fp::Vector2 dr = (path.position(s + h) - path.position(s - h)) / (2 * h);
    // the s -> parameter table is a cubic Hermite interpolant
    EXPECT_NEAR(dr.norm(), 1.0, 1e-5) << s;
    EXPECT_NEAR(path.tangent(s).dot(path.normal(s)), 0.0, 1e-12);
    EXPECT_NEAR(path.tangent(s).norm(), 1.0, 1e-12);
  }
}

TEST(FrenetGeometry, CurvatureDerivativeMatchesDifferences)
{
  const std::vector<fp::Point2> pts{{0, 0}, {5, 1}, {10, -1}, {15, 2}, {22, 0}};
  const auto path = fp::build_reference_path(pts);
  const double h = 1e-4;
  for (double s = 1.0; s < path.total_length() - 1.0; s += 1.3) {
    const double fd = (path.curvature(s + h) - path.curvature(s - h)) / (2 * h);
    EXPECT_NEAR(path.frame(s).dkappa, fd, 1e-5) << s;
  }
}

TEST(FrenetGeometry, RoundTrip)
{
  const std::vector<fp::Point2> pts{{0, 0}, {5, 1}, {10, -1}, {15, 2}, {22, 0}};
  const auto path = fp::build_reference_path(pts);
  for (double s : {0.5, 4.0, 9.3, 17.0}) {
    for (double d : {-1.0, 0.0, 0.8}) {
      const auto p = fp::frenet_to_cartesian(path, s, d);
      const auto back = fp::cartesian_to_frenet(path, p);
      EXPECT_NEAR(back.s, s, 1e-6) << s << "," << d;
      EXPECT_NEAR(back.d, d, 1e-6) << s << "," << d;
    }
  }
}

TEST(FrenetGeometry, Errors)
{
  const std::vector<fp::Point2> three{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(code_of([&] { fp::build_reference_path(three); }), fp::ErrorCode::TooFewWaypoints);
  const std::vector<fp::Point2> dup{{0, 0}, {1, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(code_of([&] { fp::build_reference_path(dup); }), fp::ErrorCode::DuplicateWaypoint);

  const auto line = fp::build_reference_path(straight_line(10.0, 5));
  EXPECT_EQ(code_of([&] { line.frame(-1.0); }), fp::ErrorCode::OutOfRangeS);
  EXPECT_EQ(code_of([&] { line.frame(10.5); }), fp::ErrorCode::OutOfRangeS);
  EXPECT_EQ(
    code_of([&] { fp::cartesian_to_frenet(line, fp::Point2(15.0, 0.5)); }),
    fp::ErrorCode::OutsideTube);

  const auto bend = fp::build_reference_path(arc(4.0, std::numbers::pi / 2, 20));
  const double mid = 0.5 * bend.total_length();
  EXPECT_EQ(code_of([&] { bend.to_cartesian(mid, 5.0); }), fp::ErrorCode::InvalidLateralOffset);

  const auto half = fp::build_reference_path(arc(4.0, std::numbers::pi, 41));
  EXPECT_EQ(
    code_of([&] { fp::cartesian_to_frenet(half, fp::Point2(0.0, 0.0)); }),
    fp::ErrorCode::ProjectionAmbiguous);
}

TEST(FrenetGeometry, StateDistanceIsEuclidean)
{
  const fp::FrenetState a{1, 2, 3, 4, 5, 6};
  const fp::FrenetState b{2, 2, 3, 4, 5, 8};
  EXPECT_DOUBLE_EQ(fp::state_distance(a, b), std::sqrt(5.0));
  EXPECT_EQ(fp::state_distance(a, a), 0.0);
}
