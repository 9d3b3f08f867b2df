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

#include "frenet_planner/momentum_optimizer.hpp"

#include "frenet_planner/error.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace frenet_planner
{

namespace
{

// smooth modes per axis
constexpr std::size_t kBasisSize = 2;
constexpr int kMaxBacktracks = 30;
// bound on |dr/ds| with room for the arc-length inversion error
constexpr double kLipschitzSlack = 1.0 + 1e-4;

void require(bool ok, const std::string & field, const std::string & what)
{
  if (!ok) {
    throw PlannerError(ErrorCode::ScenarioInvalid, field + " " + what);
  }
}

void predict_neighbors(
  std::span<const Neighbor> neighbors, double t, std::vector<Neighbor> & out)
{
  out.resize(neighbors.size());
  for (std::size_t j = 0; j < neighbors.size(); ++j) {
    out[j] = neighbors[j];
    out[j].position = neighbors[j].position + t * neighbors[j].velocity;
  }
}

// F_int projected on the path frame, dotted with (s_dot, d_dot); gradient over
// (s, d, s_dot, d_dot) when requested.
double interaction_power(
  const FrenetState & st, double t, const CostContext & context, std::vector<Neighbor> & scratch,
  Eigen::Matrix<double, 4, 1> * grad)
{
  predict_neighbors(context.neighbors, t, scratch);
  const PathFrame fr = context.path->frame(st.s);
  const Vector2 & tan = fr.tangent;
  const Vector2 & nor = fr.normal;
  const double a = 1.0 - fr.kappa * st.d;
  const Point2 x = fr.position + st.d * nor;
  const Vector2 xd = a * st.s_dot * tan + st.d_dot * nor;
  const Vector2 q = st.s_dot * tan + st.d_dot * nor;

  if (grad == nullptr) {
    return interaction_force(x, xd, scratch, context.interaction).dot(q);
  }
  const InteractionForceJacobian ij =
    interaction_force_with_jacobian(x, xd, scratch, context.interaction);
  const Vector2 & f = ij.force;
  const Eigen::Matrix2d & jx = ij.d_position;
  const Eigen::Matrix2d & jv = ij.d_velocity;

  const Vector2 dx_ds = a * tan;
  const Vector2 dxd_ds =
    (-fr.dkappa * st.d * st.s_dot - st.d_dot * fr.kappa) * tan + a * st.s_dot * fr.kappa * nor;
  const Vector2 dxd_dd = -fr.kappa * st.s_dot * tan;
  const Vector2 dq_ds = st.s_dot * fr.kappa * nor - st.d_dot * fr.kappa * tan;

  (*grad)(0) = (jx * dx_ds + jv * dxd_ds).dot(q) + f.dot(dq_ds);
  (*grad)(1) = (jx * nor + jv * dxd_dd).dot(q);
  (*grad)(2) = (jv * (a * tan)).dot(q) + f.dot(tan);
  (*grad)(3) = (jv * nor).dot(q) + f.dot(nor);
  return f.dot(q);
}

// Polynomials in ascending coefficient order.
using Poly = std::vector<double>;

Poly multiply(const Poly & a, const Poly & b)
{
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Poly derivative(const Poly & p)
{
  if (p.size() <= 1) {
    return Poly{0.0};
  }
  Poly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) {
    out[i - 1] = static_cast<double>(i) * p[i];
  }
  return out;
}

double evaluate(const Poly & p, double x)
{
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

// tau^3 (1 - tau)^3 P_k(2 tau - 1) and its first three derivatives: each
// vanishes with its first two derivatives at tau = 0 and tau = 1.
std::vector<std::array<Poly, 4>> smooth_basis(std::size_t count)
{
  const Poly bubble{0.0, 0.0, 0.0, 1.0, -3.0, 3.0, -1.0};
  std::vector<Poly> legendre{Poly{1.0}, Poly{-1.0, 2.0}};
  while (legendre.size() < count) {
    const std::size_t k = legendre.size() - 1;
    const Poly lifted = multiply(Poly{-1.0, 2.0}, legendre[k]);
    Poly next(lifted.size(), 0.0);
    for (std::size_t i = 0; i < lifted.size(); ++i) {
      next[i] = (2.0 * k + 1.0) * lifted[i];
      if (i < legendre[k - 1].size()) {
        next[i] -= static_cast<double>(k) * legendre[k - 1][i];
      }
      next[i] /= static_cast<double>(k + 1);
    }
    legendre.push_back(next);
  }
  std::vector<std::array<Poly, 4>> basis(count);
  for (std::size_t k = 0; k < count; ++k) {
    basis[k][0] = multiply(bubble, legendre[k]);
    for (std::size_t m = 1; m < 4; ++m) {
      basis[k][m] = derivative(basis[k][m - 1]);
    }
  }
  return basis;
}

}  // namespace

KinematicModel KinematicModel::frenet_triple_integrator()
{
  KinematicModel model;
  model.A.setZero();
  model.B.setZero();
  for (int axis = 0; axis < 2; ++axis) {
    const int o = 3 * axis;
    model.A(o, o + 1) = 1.0;
    model.A(o + 1, o + 2) = 1.0;
    model.B(o + 2, axis) = 1.0;
  }
  model.C.setIdentity();
  model.D.setZero();
  return model;
}

Eigen::Matrix<double, 6, 1> KinematicModel::state_derivative(
  const FrenetState & x, const Vector2 & jerk) const
{
  const auto values = x.as_array();
  const Eigen::Map<const Eigen::Matrix<double, 6, 1>> state(values.data());
  return A * state + B * jerk;
}

Eigen::Matrix<double, 6, 1> KinematicModel::output(const FrenetState & x, const Vector2 & jerk) const
{
  const auto values = x.as_array();
  const Eigen::Map<const Eigen::Matrix<double, 6, 1>> state(values.data());
  return C * state + D * jerk;
}

void validate_optimizer(const OptimizerConfig & config)
{
  require(std::isfinite(config.mass) && config.mass > 0.0, "optimizer.mass", "must be positive");
  require(
    std::isfinite(config.lambda_s) && config.lambda_s >= 0.0, "optimizer.lambda_s",
    "must be non-negative");
  require(
    std::isfinite(config.lambda_u) && config.lambda_u >= 0.0, "optimizer.lambda_u",
    "must be non-negative");
  require(std::isfinite(config.dt) && config.dt > 0.0, "optimizer.dt", "must be positive");
  require(config.max_iters >= 0, "optimizer.max_iters", "must be non-negative");
  require(
    config.armijo_c > 0.0 && config.armijo_c < 1.0, "optimizer.armijo_c", "must lie in (0, 1)");
  require(
    config.step_shrink > 0.0 && config.step_shrink < 1.0, "optimizer.step_shrink",
    "must lie in (0, 1)");
  require(
    std::isfinite(config.grad_tol) && config.grad_tol >= 0.0, "optimizer.grad_tol",
    "must be non-negative");
}

double CostContext::sigma_trace() const
{
  double trace = sigma_baseline;
  for (const Neighbor & n : neighbors) {
    trace += n.covariance_trace;
  }
  return trace;
}

double lagrangian_at(
  const FrenetState & state, const Vector2 & v_dot, const Vector2 & f_ext, double sigma_trace,
  const OptimizerConfig & config)
{
  const Vector2 v(state.s_dot, state.d_dot);
  return 0.5 * config.mass * v.squaredNorm() - f_ext.dot(v) +
         config.lambda_s * v_dot.squaredNorm() + config.lambda_u * sigma_trace;
}

Vector2 external_force(const FrenetState & state, double t, const CostContext & context)
{
  Vector2 f = -assistive_force(state, context.assistive);
  if (!context.neighbors.empty()) {
    std::vector<Neighbor> scratch;
    predict_neighbors(context.neighbors, t, scratch);
    const PathFrame fr = context.path->frame(state.s);
    const Point2 x = fr.position + state.d * fr.normal;
    const Vector2 xd =
      (1.0 - fr.kappa * state.d) * state.s_dot * fr.tangent + state.d_dot * fr.normal;
    const Vector2 fi = interaction_force(x, xd, scratch, context.interaction);
    f += Vector2(fi.dot(fr.tangent), fi.dot(fr.normal));
  }
  return f;
}

double total_cost(
  const TrajectoryCandidate & candidate, const CostContext & context,
  const TrajectoryCandidate & reference, const OptimizerConfig & config,
  const RegulationConfig & regulation)
{
  if (candidate.samples.empty()) {
    throw PlannerError(ErrorCode::EmptyInput, "candidate has no samples");
  }
  const double sigma = context.sigma_trace();
  double integral = 0.0;
  double previous = 0.0;
  for (std::size_t i = 0; i < candidate.samples.size(); ++i) {
    const TrajectorySample & sample = candidate.samples[i];
    const Vector2 v_dot(sample.state.s_ddot, sample.state.d_ddot);
    const double l = lagrangian_at(
      sample.state, v_dot, external_force(sample.state, sample.t, context), sigma, config);
    if (i > 0) {
      integral += 0.5 * (previous + l) * (sample.t - candidate.samples[i - 1].t);
    }
    previous = l;
  }
  return integral + regulation.lambda_ep * regulation_energy(candidate, reference, regulation);
}

DiscretizedObjective::DiscretizedObjective(
  const TrajectoryCandidate & candidate, const CostContext & context,
  const OptimizerConfig & config, double terminal_term)
: context_(context), config_(config), terminal_term_(terminal_term), dt_(candidate.dt)
{
  if (candidate.samples.size() < 3) {
    throw PlannerError(ErrorCode::EmptyInput, "candidate needs at least three samples");
  }
  if (!(dt_ > 0.0)) {
    throw PlannerError(ErrorCode::InvalidGrid, "candidate dt must be positive");
  }
  const std::size_t n = candidate.samples.size() - 1;
  interior_ = n - 1;
  first_ = candidate.samples.front().state;
  last_ = candidate.samples.back().state;
  initial_.resize(static_cast<Eigen::Index>(2 * interior_));
  for (std::size_t i = 1; i < n; ++i) {
    initial_(static_cast<Eigen::Index>(i - 1)) = candidate.samples[i].state.s;
    initial_(static_cast<Eigen::Index>(interior_ + i - 1)) = candidate.samples[i].state.d;
  }
  if (!context_.neighbors.empty()) {
    const double length = context_.path->total_length();
    anchor_s_.resize(n);
    anchor_clearance_.resize(n);
    for (std::size_t h = 0; h < n; ++h) {
      const double t = (static_cast<double>(h) + 0.5) * dt_;
      anchor_s_[h] = std::clamp(
        0.5 * (candidate.samples[h].state.s + candidate.samples[h + 1].state.s), 0.0, length);
      const Point2 anchor = context_.path->position(anchor_s_[h]);
      double clearance = std::numeric_limits<double>::infinity();
      for (const Neighbor & nb : context_.neighbors) {
        clearance = std::min(clearance, (anchor - (nb.position + t * nb.velocity)).norm());
      }
      anchor_clearance_[h] = clearance;
    }
  }
}

double DiscretizedObjective::value(const Eigen::VectorXd & x) const
{
  return evaluate(x, nullptr);
}

double DiscretizedObjective::value_and_gradient(
  const Eigen::VectorXd & x, Eigen::VectorXd & gradient) const
{
  return evaluate(x, &gradient);
}

double DiscretizedObjective::evaluate(const Eigen::VectorXd & x, Eigen::VectorXd * gradient) const
{
  const std::size_t n = interior_ + 1;
  const double dt = dt_;
  std::vector<double> ps(n + 1);
  std::vector<double> pd(n + 1);
  ps[0] = first_.s;
  pd[0] = first_.d;
  ps[n] = last_.s;
  pd[n] = last_.d;
  for (std::size_t i = 1; i < n; ++i) {
    ps[i] = x(static_cast<Eigen::Index>(i - 1));
    pd[i] = x(static_cast<Eigen::Index>(interior_ + i - 1));
  }
  std::vector<double> as(n + 1);
  std::vector<double> ad(n + 1);
  as[0] = first_.s_ddot;
  ad[0] = first_.d_ddot;
  as[n] = last_.s_ddot;
  ad[n] = last_.d_ddot;
  for (std::size_t i = 1; i < n; ++i) {
    as[i] = (ps[i + 1] - 2.0 * ps[i] + ps[i - 1]) / (dt * dt);
    ad[i] = (pd[i + 1] - 2.0 * pd[i] + pd[i - 1]) / (dt * dt);
  }

  const bool want = gradient != nullptr;
  std::vector<double> gps;
  std::vector<double> gpd;
  std::vector<double> gas;
  std::vector<double> gad;
  if (want) {
    gps.assign(n + 1, 0.0);
    gpd.assign(n + 1, 0.0);
    gas.assign(n + 1, 0.0);
    gad.assign(n + 1, 0.0);
  }

  const double sigma = context_.sigma_trace();
  const bool interacting = !context_.neighbors.empty();
  std::vector<Neighbor> scratch;
  double cost = 0.0;
  for (std::size_t h = 0; h < n; ++h) {
    FrenetState st;
    st.s = 0.5 * (ps[h] + ps[h + 1]);
    st.d = 0.5 * (pd[h] + pd[h + 1]);
    st.s_dot = (ps[h + 1] - ps[h]) / dt;
    st.d_dot = (pd[h + 1] - pd[h]) / dt;
    st.s_ddot = 0.5 * (as[h] + as[h + 1]);
    st.d_ddot = 0.5 * (ad[h] + ad[h + 1]);
    const double t = (static_cast<double>(h) + 0.5) * dt;
    const Vector2 w(st.s_dot, st.d_dot);

    double l = 0.5 * config_.mass * w.squaredNorm() +
               config_.lambda_s * (st.s_ddot * st.s_ddot + st.d_ddot * st.d_ddot) +
               config_.lambda_u * sigma;
    Eigen::Matrix<double, 4, 1> z = Eigen::Matrix<double, 4, 1>::Zero();
    if (want) {
      const AssistiveForceJacobian aj = assistive_force_with_jacobian(st, context_.assistive);
      l += aj.force.dot(w);
      z = aj.jacobian.transpose() * w;
      z(2) += aj.force(0) + config_.mass * st.s_dot;
      z(3) += aj.force(1) + config_.mass * st.d_dot;
    } else {
      l += assistive_force(st, context_.assistive).dot(w);
    }
    // r(s) is unit speed, so |x - r(anchor)| <= |s - anchor| + |d|
    if (interacting &&
        anchor_clearance_[h] - kLipschitzSlack * std::abs(st.s - anchor_s_[h]) - std::abs(st.d) <=
          context_.interaction.cutoff) {
      Eigen::Matrix<double, 4, 1> zi;
      l -= interaction_power(st, t, context_, scratch, want ? &zi : nullptr);
      if (want) {
        z -= zi;
      }
    }
    cost += l * dt;

    if (want) {
      gps[h] += 0.5 * z(0) * dt - z(2);
      gps[h + 1] += 0.5 * z(0) * dt + z(2);
      gpd[h] += 0.5 * z(1) * dt - z(3);
      gpd[h + 1] += 0.5 * z(1) * dt + z(3);
      const double ws = config_.lambda_s * st.s_ddot * dt;
      const double wd = config_.lambda_s * st.d_ddot * dt;
      gas[h] += ws;
      gas[h + 1] += ws;
      gad[h] += wd;
      gad[h + 1] += wd;
    }
  }

  if (want) {
    const double inv = 1.0 / (dt * dt);
    for (std::size_t i = 1; i < n; ++i) {
      gps[i - 1] += gas[i] * inv;
      gps[i] -= 2.0 * gas[i] * inv;
      gps[i + 1] += gas[i] * inv;
      gpd[i - 1] += gad[i] * inv;
      gpd[i] -= 2.0 * gad[i] * inv;
      gpd[i + 1] += gad[i] * inv;
    }
    gradient->resize(static_cast<Eigen::Index>(2 * interior_));
    for (std::size_t i = 1; i < n; ++i) {
      (*gradient)(static_cast<Eigen::Index>(i - 1)) = gps[i];
      (*gradient)(static_cast<Eigen::Index>(interior_ + i - 1)) = gpd[i];
    }
  }
  return cost + terminal_term_;
}

Eigen::VectorXd cost_gradient(const DiscretizedObjective & objective, const Eigen::VectorXd & x)
{
  Eigen::VectorXd g;
  objective.value_and_gradient(x, g);
  return g;
}

OptimizationResult optimize_trajectory(
  const TrajectoryCandidate & candidate, const CostContext & context,
  const TrajectoryCandidate & reference, const OptimizerConfig & config,
  const RegulationConfig & regulation)
{
  validate_optimizer(config);
  if (context.path == nullptr) {
    throw PlannerError(ErrorCode::EmptyInput, "cost context has no reference path");
  }
  OptimizationResult result;
  result.candidate = candidate;
  result.input_cost = total_cost(candidate, context, reference, config, regulation);
  result.output_cost = result.input_cost;

  const std::size_t n = candidate.samples.size() - 1;
  if (config.max_iters == 0 || candidate.samples.size() < 3) {
    result.cost_history.push_back(result.input_cost);
    return result;
  }

  const double terminal_term =
    regulation.lambda_ep * regulation_energy(candidate, reference, regulation);
  const DiscretizedObjective objective(candidate, context, config, terminal_term);
  const auto m = static_cast<Eigen::Index>(objective.interior_count());
  const auto k = static_cast<Eigen::Index>(std::min<std::size_t>(kBasisSize, n - 1));

  const auto basis = smooth_basis(static_cast<std::size_t>(k));
  Eigen::MatrixXd phi(m, k);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double tau = static_cast<double>(i + 1) / static_cast<double>(n);
    for (Eigen::Index j = 0; j < k; ++j) {
      phi(i, j) = evaluate(basis[static_cast<std::size_t>(j)][0], tau);
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(phi);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, k);
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();

  // basis derivatives at the interior nodes in time units
  const double span = candidate.samples.back().t - candidate.samples.front().t;
  std::array<Eigen::MatrixXd, 4> nodal;
  double scale = 1.0;
  for (std::size_t order = 0; order < 4; ++order) {
    nodal[order].resize(m, k);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double tau = static_cast<double>(i + 1) / static_cast<double>(n);
      for (Eigen::Index j = 0; j < k; ++j) {
        nodal[order](i, j) = evaluate(basis[static_cast<std::size_t>(j)][order], tau) / scale;
      }
    }
    scale *= span;
  }
  auto perturbed = [&](const Eigen::VectorXd & y) {
    const Eigen::VectorXd cs = r.triangularView<Eigen::Upper>().solve(y.head(k));
    const Eigen::VectorXd cd = r.triangularView<Eigen::Upper>().solve(y.tail(k));
    std::array<Eigen::VectorXd, 4> ds;
    std::array<Eigen::VectorXd, 4> dd;
    for (std::size_t order = 0; order < 4; ++order) {
      ds[order] = nodal[order] * cs;
      dd[order] = nodal[order] * cd;
    }
    TrajectoryCandidate out = candidate;
    for (std::size_t i = 1; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i - 1);
      TrajectorySample & sample = out.samples[i];
      sample.state.s += ds[0](row);
      sample.state.s_dot += ds[1](row);
      sample.state.s_ddot += ds[2](row);
      sample.s_jerk += ds[3](row);
      sample.state.d += dd[0](row);
      sample.state.d_dot += dd[1](row);
      sample.state.d_ddot += dd[2](row);
      sample.d_jerk += dd[3](row);
    }
    out.refined = true;
    return out;
  };

  std::array<double, kConstraintCount> ceiling{};
  const bool bounded = context.limits.has_value() && candidate.samples.size() >= 4;
  if (bounded) {
    const FeasibilityReport seed = check_candidate(candidate, *context.path, *context.limits);
    for (std::size_t c = 0; c < kConstraintCount; ++c) {
      ceiling[c] = std::max(1.0, seed.worst_margins[c]);
    }
  }
  auto admissible = [&](const Eigen::VectorXd & y) {
    if (!bounded) {
      return true;
    }
    try {
      const FeasibilityReport rep = check_candidate(perturbed(y), *context.path, *context.limits);
      for (std::size_t c = 0; c < kConstraintCount; ++c) {
        if (!(rep.worst_margins[c] <= ceiling[c])) {
          return false;
        }
      }
      return true;
    } catch (const PlannerError &) {
      return false;
    }
  };

  const Eigen::VectorXd & x0 = objective.initial_variables();
  auto expand = [&](const Eigen::VectorXd & y) {
    Eigen::VectorXd x = x0;
    x.head(m) += q * y.head(k);
    x.tail(m) += q * y.tail(k);
    return x;
  };
  auto project = [&](const Eigen::VectorXd & g) {
    Eigen::VectorXd p(2 * k);
    p.head(k) = q.transpose() * g.head(m);
    p.tail(k) = q.transpose() * g.tail(m);
    return p;
  };
  auto safe_value = [&](const Eigen::VectorXd & x) {
    try {
      const double v = objective.value(x);
      return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    } catch (const PlannerError &) {
      return std::numeric_limits<double>::infinity();
    }
  };

  Eigen::VectorXd y = Eigen::VectorXd::Zero(2 * k);
  Eigen::VectorXd g;
  double cost = objective.value_and_gradient(x0, g);
  Eigen::VectorXd gp = project(g);
  result.cost_history.push_back(cost);
  double step = 0.1 / std::max(gp.lpNorm<Eigen::Infinity>(), 1e-12);

  result.termination = OptimizerTermination::MaxIterations;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    const double gnorm2 = gp.squaredNorm();
    if (std::sqrt(gnorm2) <= config.grad_tol) {
      result.termination = OptimizerTermination::GradientTolerance;
      break;
    }
    bool accepted = false;
    Eigen::VectorXd y_trial;
    double trial_cost = 0.0;
    for (int b = 0; b < kMaxBacktracks; ++b) {
      y_trial = y - step * gp;
      trial_cost = safe_value(expand(y_trial));
      if (trial_cost < cost && trial_cost <= cost - config.armijo_c * step * gnorm2 &&
          admissible(y_trial)) {
        accepted = true;
        break;
      }
      step *= config.step_shrink;
    }
    if (!accepted) {
      result.termination = OptimizerTermination::LineSearchFailed;
      break;
    }
    Eigen::VectorXd g_new;
    objective.value_and_gradient(expand(y_trial), g_new);
    const Eigen::VectorXd gp_new = project(g_new);
    const Eigen::VectorXd dy = y_trial - y;
    const double curvature = dy.dot(gp_new - gp);
    step = curvature > 0.0 ? dy.squaredNorm() / curvature : 2.0 * step;

    y = y_trial;
    gp = gp_new;
    cost = trial_cost;
    result.cost_history.push_back(cost);
    ++result.iterations;
  }

  if (result.iterations == 0) {
    return result;
  }

  TrajectoryCandidate refined = perturbed(y);

  double refined_cost = std::numeric_limits<double>::infinity();
  try {
    refined_cost = total_cost(refined, context, reference, config, regulation);
  } catch (const PlannerError &) {
  }
  if (refined_cost < result.input_cost) {
    result.candidate = std::move(refined);
    result.output_cost = refined_cost;
  }
  return result;
}

}  // namespace frenet_planner
