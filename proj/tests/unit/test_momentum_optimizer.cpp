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


#include "frenet_planner/endpoint_regulation.hpp"
#include "frenet_planner/error.hpp"
#include "frenet_planner/evaluation.hpp"
#include "frenet_planner/momentum_optimizer.hpp"
#include "frenet_planner/trajectory.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace fp = frenet_planner;

namespace
{

fp::ReferencePath wavy_path()
{
  std::vector<fp::Point2> pts;
  for (int i = 0; i <= 12; ++i) {
    const double x = 3.0 * i;
    pts.emplace_back(x, 1.5 * std::sin(0.15 * x));
  }
  return fp::build_reference_path(pts);
}

struct Bench
{
  fp::ReferencePath path = wavy_path();
  fp::CostContext context;
  fp::OptimizerConfig config;
  fp::RegulationConfig regulation;
  fp::TrajectoryCluster cluster;

  Bench()
  {
    context.path = &path;
    context.assistive.v_des = 1.2;
    context.assistive.k_s = 0.2;
    context.assistive.k_d = 0.1;
    context.assistive.c_d = 0.2;
    context.assistive.f_bar = 2.0;
    context.assistive.bumps = {{6.0, 1.5, 0.6}};
    context.interaction = {1.0, 1.0, 1.0, 5.0};
    const fp::Point2 nb = path.to_cartesian(7.0, 1.2);
    context.neighbors = {{nb, fp::Vector2(-0.4, 0.0), 0.3}};
    context.sigma_baseline = 0.1;
    config.lambda_s = 10.0;
    config.dt = 0.1;
    config.max_iters = 8;
    regulation.lambda_ep = 2.0;

    fp::SamplingGrid grid{{0.8, 1.3}, {-0.5, 0.0, 0.5}, {3.0}, 0.1};
    fp::FrenetState x0{2.0, 1.0, 0.1, 0.2, 0.0, 0.0};
    cluster = fp::generate_cluster(x0, path, grid);
    fp::sort_cluster(cluster);
    cluster.reference_index = fp::select_reference_candidate(cluster);
  }

  const fp::TrajectoryCandidate & reference() const
  {
    return cluster.candidates[cluster.reference_index];
  }
};

}  // namespace

TEST(MomentumOptimizer, TripleIntegratorMatrices)
{
  const auto m = fp::KinematicModel::frenet_triple_integrator();
  const fp::FrenetState x{1, 2, 3, 4, 5, 6};
  const auto xd = m.state_derivative(x, fp::Vector2(7, 8));
  const double expected[6] = {2, 3, 7, 5, 6, 8};
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(xd(i), expected[i]);
  }
  const auto y = m.output(x, fp::Vector2(7, 8));
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(y(i), x.as_array()[i]);
  }
}

TEST(MomentumOptimizer, LagrangianByHand)
{
  fp::OptimizerConfig c;
  c.mass = 2.0;
  c.lambda_s = 0.5;
  c.lambda_u = 0.1;
  const fp::FrenetState x{0, 1.5, 0, 0, -0.5, 0};
  const double l = fp::lagrangian_at(x, fp::Vector2(0.2, 0.4), fp::Vector2(1.0, 2.0), 3.0, c);
  // 1/2*2*(2.25+0.25) - (1.5 - 1.0) + 0.5*(0.04+0.16) + 0.1*3
  EXPECT_NEAR(l, 2.5 - 0.5 + 0.1 + 0.3, 1e-14);
}

TEST(MomentumOptimizer, ExternalForceWithoutNeighborsIsNegatedAssistive)
{
  Bench s;
  s.context.neighbors.clear();
  const fp::FrenetState x{5.0, 0.7, 0, 0.3, 0.1, 0};
  const auto f = fp::external_force(x, 0.0, s.context);
  const auto a = fp::assistive_force(x, s.context.assistive);
  EXPECT_EQ(f, fp::Vector2(-a));
}

TEST(MomentumOptimizer, SigmaTraceSumsNeighbors)
{
  Bench s;
  s.context.neighbors.push_back({fp::Point2(50, 50), fp::Vector2::Zero(), 0.25});
  EXPECT_DOUBLE_EQ(s.context.sigma_trace(), 0.1 + 0.3 + 0.25);
}

TEST(MomentumOptimizer, GradientMatchesCentralDifferences)
{
  Bench s;
  for (const auto & cand : s.cluster.candidates) {
    const fp::DiscretizedObjective obj(cand, s.context, s.config, 0.0);
    const Eigen::VectorXd x0 = obj.initial_variables();
    const Eigen::VectorXd g = fp::cost_gradient(obj, x0);
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < x0.size(); ++i) {
      Eigen::VectorXd p = x0;
      Eigen::VectorXd m = x0;
      p(i) += h;
      m(i) -= h;
      const double fd = (obj.value(p) - obj.value(m)) / (2 * h);
      const double scale = std::max({std::abs(fd), std::abs(g(i)), 1e-3});
      EXPECT_LE(std::abs(g(i) - fd) / scale, 1e-4) << "component " << i;
    }
  }
}

TEST(MomentumOptimizer, DescendsAndKeepsEndpoints)
{
  Bench s;
  s.context.limits = fp::KinematicLimits{};
  for (const auto & cand : s.cluster.candidates) {
    const auto r = fp::optimize_trajectory(cand, s.context, s.reference(), s.config, s.regulation);
    for (std::size_t i = 1; i < r.cost_history.size(); ++i) {
      EXPECT_LT(r.cost_history[i], r.cost_history[i - 1]);
    }
    EXPECT_LE(r.output_cost, r.input_cost);
    ASSERT_EQ(r.candidate.samples.size(), cand.samples.size());
    const auto & a0 = cand.samples.front().state.as_array();
    const auto & b0 = r.candidate.samples.front().state.as_array();
    const auto & a1 = cand.samples.back().state.as_array();
    const auto & b1 = r.candidate.samples.back().state.as_array();
    for (int k = 0; k < 6; ++k) {
      EXPECT_LE(std::abs(a0[k] - b0[k]), 1e-9);
      EXPECT_LE(std::abs(a1[k] - b1[k]), 1e-9);
    }
    EXPECT_EQ(r.candidate.terminal, cand.terminal);
  }
}

TEST(MomentumOptimizer, AdmissibleRegionKeepsFeasibleInputsFeasible)
{
  Bench s;
  s.context.limits = fp::KinematicLimits{};
  for (const auto & cand : s.cluster.candidates) {
    const auto before = fp::check_candidate(cand, s.path, *s.context.limits);
    const auto r = fp::optimize_trajectory(cand, s.context, s.reference(), s.config, s.regulation);
    const auto after = fp::check_candidate(r.candidate, s.path, *s.context.limits);
    for (const auto c : fp::kAllConstraints) {
      EXPECT_LE(after.margin(c), std::max(1.0, before.margin(c))) << fp::to_string(c);
    }
    if (before.feasible) {
      EXPECT_TRUE(after.feasible);
    }
  }
}

TEST(MomentumOptimizer, RefinedSamplesAreSelfConsistent)
{
  Bench s;
  bool any = false;
  for (const auto & cand : s.cluster.candidates) {
    const auto r = fp::optimize_trajectory(cand, s.context, s.reference(), s.config, s.regulation);
    if (!r.candidate.refined) {
      continue;
    }
    any = true;
    const auto & smp = r.candidate.samples;
    const double dt = r.candidate.dt;
    for (std::size_t i = 1; i + 1 < smp.size(); ++i) {
      EXPECT_NEAR(smp[i].state.s_dot, (smp[i + 1].state.s - smp[i - 1].state.s) / (2 * dt), 0.05);
      EXPECT_NEAR(smp[i].state.d_dot, (smp[i + 1].state.d - smp[i - 1].state.d) / (2 * dt), 0.05);
    }
  }
  EXPECT_TRUE(any);
}

TEST(MomentumOptimizer, ZeroIterationsReturnsInput)
{
  Bench s;
  s.config.max_iters = 0;
  const auto & cand = s.cluster.candidates.front();
  const auto r = fp::optimize_trajectory(cand, s.context, s.reference(), s.config, s.regulation);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_FALSE(r.candidate.refined);
  EXPECT_EQ(r.input_cost, r.output_cost);
  ASSERT_EQ(r.candidate.samples.size(), cand.samples.size());
  for (std::size_t i = 0; i < cand.samples.size(); ++i) {
    EXPECT_EQ(r.candidate.samples[i].state, cand.samples[i].state);
  }
}

TEST(MomentumOptimizer, TotalCostIncludesRegulationTerm)
{
  Bench s;
  const auto & cand = s.cluster.candidates.front();
  auto reg = s.regulation;
  reg.lambda_ep = 0.0;
  const double base = fp::total_cost(cand, s.context, s.reference(), s.config, reg);
  reg.lambda_ep = 3.0;
  const double with = fp::total_cost(cand, s.context, s.reference(), s.config, reg);
  EXPECT_NEAR(with - base, 3.0 * fp::regulation_energy(cand, s.reference(), reg), 1e-10);
}

TEST(MomentumOptimizer, ValidationNamesField)
{
  fp::OptimizerConfig c;
  c.armijo_c = 1.0;
  try {
    fp::validate_optimizer(c);
    FAIL();
  } catch (const fp::PlannerError & e) {
    EXPECT_NE(std::string(e.what()).find("optimizer.armijo_c"), std::string::npos);
  }
}
