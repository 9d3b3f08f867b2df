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
#include "frenet_planner/trajectory.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace fp = frenet_planner;

namespace
{

fp::ReferencePath line(double length)
{
  std::vector<fp::Point2> pts;
  for (int i = 0; i <= 4; ++i) {
    pts.emplace_back(length * i / 4.0, 0.0);
  }
  return fp::build_reference_path(pts);
}

fp::FrenetState moving()
{
  return {2.0, 1.1, 0.2, 0.3, -0.1, 0.05};
}

}  // namespace

TEST(Sampling, CandidateStartsAtInitialAndEndsAtTarget)
{
  const auto path = line(40.0);
  fp::TerminalTarget target{5.0, 1.4, 0.0, -0.5, 0.0, 0.0, 3.0};
  target.s = moving().s + 3.5;
  const auto c = fp::make_candidate(moving(), target, path, 0.1);
  ASSERT_TRUE(c.has_value());
  ASSERT_EQ(c->samples.size(), 31u);
  const auto & x0 = c->samples.front().state;
  EXPECT_NEAR(x0.s, 2.0, 1e-12);
  EXPECT_NEAR(x0.s_dot, 1.1, 1e-12);
  EXPECT_NEAR(x0.s_ddot, 0.2, 1e-12);
  EXPECT_NEAR(x0.d, 0.3, 1e-12);
  EXPECT_NEAR(x0.d_dot, -0.1, 1e-12);
  EXPECT_NEAR(x0.d_ddot, 0.05, 1e-12);
  const auto & xt = c->samples.back().state;
  EXPECT_NEAR(xt.s, target.s, 1e-9);
  EXPECT_NEAR(xt.s_dot, 1.4, 1e-9);
  EXPECT_NEAR(xt.d, -0.5, 1e-9);
  EXPECT_NEAR(xt.d_dot, 0.0, 1e-9);
  EXPECT_NEAR(xt.d_ddot, 0.0, 1e-9);
  EXPECT_EQ(c->terminal, xt);
  EXPECT_NEAR(c->samples.back().t, 3.0, 1e-12);
}

TEST(Sampling, LateralRatesFollowTimeDerivatives)
{
  const auto path = line(40.0);
  fp::TerminalTarget target{6.0, 0.9, 0.0, 1.0, 0.0, 0.0, 3.0};
  const auto c = fp::make_candidate(moving(), target, path, 0.1);
  ASSERT_TRUE(c.has_value());
  const double h = 1e-5;
  for (double t : {0.3, 1.1, 2.2}) {
    const auto a = fp::sample_polynomials(*c, t);
    const auto p = fp::sample_polynomials(*c, t + h);
    const auto m = fp::sample_polynomials(*c, t - h);
    EXPECT_NEAR(a.state.s_dot, (p.state.s - m.state.s) / (2 * h), 1e-7);
    EXPECT_NEAR(a.state.d_dot, (p.state.d - m.state.d) / (2 * h), 1e-7);
    EXPECT_NEAR(a.state.d_ddot, (p.state.d_dot - m.state.d_dot) / (2 * h), 1e-7);
    EXPECT_NEAR(a.d_jerk, (p.state.d_ddot - m.state.d_ddot) / (2 * h), 1e-6);
    EXPECT_NEAR(a.s_jerk, (p.state.s_ddot - m.state.s_ddot) / (2 * h), 1e-6);
  }
}

TEST(Sampling, BackwardMotionIsDiscarded)
{
  const auto path = line(40.0);
  fp::FrenetState x;
  x.s = 10.0;
  x.s_dot = 0.2;
  fp::TerminalTarget target{10.0 - 1.0, 0.2, 0.0, 0.0, 0.0, 0.0, 2.0};
  EXPECT_FALSE(fp::make_candidate(x, target, path, 0.1).has_value());
}

TEST(Sampling, ClusterCountAndOrder)
{
  const auto path = line(40.0);
  fp::SamplingGrid grid;
  grid.terminal_speeds = {0.8, 1.2};
  grid.lateral_offsets = {-0.5, 0.0, 0.5};
  grid.horizons = {2.0, 3.0};
  grid.dt = 0.1;
  const auto cluster = fp::generate_cluster(moving(), path, grid);
  ASSERT_EQ(cluster.candidates.size(), 12u);
  std::size_t i = 0;
  for (double T : grid.horizons) {
    for (double v : grid.terminal_speeds) {
      for (double d : grid.lateral_offsets) {
        const auto & c = cluster.candidates[i++];
        EXPECT_DOUBLE_EQ(c.horizon, T);
        EXPECT_NEAR(c.terminal.s_dot, v, 1e-9);
        EXPECT_NEAR(c.terminal.d, d, 1e-9);
        EXPECT_NEAR(c.terminal.s_ddot, 0.0, 1e-9);
      }
    }
  }
  auto sorted = cluster;
  fp::sort_cluster(sorted);
  for (std::size_t k = 1; k < sorted.candidates.size(); ++k) {
    const auto & a = sorted.candidates[k - 1].terminal;
    const auto & b = sorted.candidates[k].terminal;
    const bool same_d = std::abs(a.d - b.d) < 1e-9;
    EXPECT_TRUE(same_d ? a.s_dot <= b.s_dot + 1e-9 : a.d < b.d) << k;
  }
}

TEST(Sampling, SingleCellGrid)
{
  const auto path = line(40.0);
  fp::SamplingGrid grid{{1.0}, {0.0}, {2.0}, 0.1};
  EXPECT_EQ(fp::generate_cluster(moving(), path, grid).candidates.size(), 1u);
}

TEST(Sampling, Errors)
{
  const auto path = line(5.0);
  fp::SamplingGrid grid{{3.0}, {0.0}, {3.0}, 0.1};
  try {
    fp::generate_cluster(moving(), path, grid);
    FAIL();
  } catch (const fp::PlannerError & e) {
    EXPECT_EQ(e.code(), fp::ErrorCode::PathTooShort);
  }
  for (const fp::SamplingGrid & bad :
       {fp::SamplingGrid{{}, {0.0}, {2.0}, 0.1}, fp::SamplingGrid{{1.0}, {0.0}, {2.05}, 0.1},
        fp::SamplingGrid{{1.0}, {0.0}, {0.3}, 0.1}, fp::SamplingGrid{{1.0}, {0.0}, {2.0}, 0.0}}) {
    try {
      fp::validate_grid(bad);
      ADD_FAILURE();
    } catch (const fp::PlannerError & e) {
      EXPECT_EQ(e.code(), fp::ErrorCode::InvalidGrid);
    }
  }
}
