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

#include "frenet_planner/scenario.hpp"

#include "frenet_planner/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <sstream>

namespace frenet_planner
{

namespace
{

using nlohmann::json;
using ordered = nlohmann::ordered_json;

class Reader
{
public:
  explicit Reader(std::vector<std::string> & errors) : errors_(errors) {}

  void fail(const std::string & path, const std::string & what) { errors_.push_back(path + " " + what); }

  bool object(const json & node, const std::string & path)
  {
    if (!node.is_object()) {
      fail(path, "must be an object");
      return false;
    }
    return true;
  }

  void allowed(const json & obj, const std::string & path, std::initializer_list<const char *> keys)
  {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const bool known = std::any_of(
        keys.begin(), keys.end(), [&](const char * k) { return it.key() == k; });
      if (!known) {
        fail(join(path, it.key()), "is not a recognized key");
      }
    }
  }

  void number(const json & obj, const std::string & path, const char * key, double & out, bool required = false)
  {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) {
        fail(join(path, key), "is required");
      }
      return;
    }
    if (!it->is_number()) {
      fail(join(path, key), "must be a number");
      return;
    }
    out = it->get<double>();
  }

  void integer(const json & obj, const std::string & path, const char * key, int & out)
  {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      return;
    }
    if (!it->is_number_integer()) {
      fail(join(path, key), "must be an integer");
      return;
    }
    out = it->get<int>();
  }

  void unsigned64(const json & obj, const std::string & path, const char * key, std::uint64_t & out)
  {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      return;
    }
    if (!it->is_number_unsigned()) {
      fail(join(path, key), "must be a non-negative integer");
      return;
    }
    out = it->get<std::uint64_t>();
  }

  void numbers(
    const json & obj, const std::string & path, const char * key, std::vector<double> & out,
    bool required = false)
  {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) {
        fail(join(path, key), "is required");
      }
      return;
    }
    if (!it->is_array()) {
      fail(join(path, key), "must be an array of numbers");
      return;
    }
    out.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_number()) {
        fail(join(path, key) + "[" + std::to_string(i) + "]", "must be a number");
        continue;
      }
      out.push_back((*it)[i].get<double>());
    }
  }

  bool point(const json & node, const std::string & path, Point2 & out)
  {
    if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number()) {
      fail(path, "must be a [x, y] pair of numbers");
      return false;
    }
    out = Point2(node[0].get<double>(), node[1].get<double>());
    return true;
  }

  static std::string join(const std::string & path, const std::string & key)
  {
    return path.empty() ? key : path + "." + key;
  }

private:
  std::vector<std::string> & errors_;
};

std::size_t line_of(std::string_view text, std::size_t byte)
{
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

void read_document(const json & doc, Scenario & sc, Reader & r)
{
  if (!r.object(doc, "scenario")) {
    return;
  }
  r.allowed(
    doc, "", {"schema_version", "name", "reference_path", "initial_state", "agents",
              "uncertainty_baseline", "limits", "grid", "regulation", "optimizer", "assistive",
              "interaction", "sim"});

  const auto version = doc.find("schema_version");
  if (version == doc.end()) {
    r.fail("schema_version", "is required");
  } else if (!version->is_number_integer() || version->get<int>() != kScenarioSchemaVersion) {
    r.fail("schema_version", "must be " + std::to_string(kScenarioSchemaVersion));
  }
  if (const auto it = doc.find("name"); it != doc.end()) {
    if (it->is_string()) {
      sc.name = it->get<std::string>();
    } else {
      r.fail("name", "must be a string");
    }
  }

  if (const auto it = doc.find("reference_path"); it == doc.end()) {
    r.fail("reference_path", "is required");
  } else if (r.object(*it, "reference_path")) {
    r.allowed(*it, "reference_path", {"waypoints"});
    const auto wps = it->find("waypoints");
    if (wps == it->end() || !wps->is_array()) {
      r.fail("reference_path.waypoints", "must be an array of [x, y] pairs");
    } else {
      for (std::size_t i = 0; i < wps->size(); ++i) {
        Point2 p;
        if (r.point((*wps)[i], "reference_path.waypoints[" + std::to_string(i) + "]", p)) {
          sc.waypoints.push_back(p);
        }
      }
    }
  }

  if (const auto it = doc.find("initial_state"); it == doc.end()) {
    r.fail("initial_state", "is required");
  } else if (r.object(*it, "initial_state")) {
    r.allowed(*it, "initial_state", {"s", "s_dot", "s_ddot", "d", "d_dot", "d_ddot"});
    r.number(*it, "initial_state", "s", sc.initial.s);
    r.number(*it, "initial_state", "s_dot", sc.initial.s_dot);
    r.number(*it, "initial_state", "s_ddot", sc.initial.s_ddot);
    r.number(*it, "initial_state", "d", sc.initial.d);
    r.number(*it, "initial_state", "d_dot", sc.initial.d_dot);
    r.number(*it, "initial_state", "d_ddot", sc.initial.d_ddot);
  }

  if (const auto it = doc.find("agents"); it != doc.end()) {
    if (!it->is_array()) {
      r.fail("agents", "must be an array");
    } else {
      for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string path = "agents[" + std::to_string(i) + "]";
        const json & a = (*it)[i];
        if (!r.object(a, path)) {
          continue;
        }
        r.allowed(a, path, {"position", "velocity", "covariance_trace"});
        Neighbor n;
        if (const auto p = a.find("position"); p == a.end()) {
          r.fail(path + ".position", "is required");
        } else {
          r.point(*p, path + ".position", n.position);
        }
        if (const auto v = a.find("velocity"); v != a.end()) {
          r.point(*v, path + ".velocity", n.velocity);
        }
        r.number(a, path, "covariance_trace", n.covariance_trace);
        sc.agents.push_back(n);
      }
    }
  }
  r.number(doc, "", "uncertainty_baseline", sc.uncertainty_baseline);

  if (const auto it = doc.find("limits"); it != doc.end() && r.object(*it, "limits")) {
    r.allowed(*it, "limits", {"v_max", "a_max", "j_max", "kappa_max", "yaw_rate_max", "kappa_rate_max"});
    r.number(*it, "limits", "v_max", sc.limits.v_max);
    r.number(*it, "limits", "a_max", sc.limits.a_max);
    r.number(*it, "limits", "j_max", sc.limits.j_max);
    r.number(*it, "limits", "kappa_max", sc.limits.kappa_max);
    r.number(*it, "limits", "yaw_rate_max", sc.limits.yaw_rate_max);
    r.number(*it, "limits", "kappa_rate_max", sc.limits.kappa_rate_max);
  }

  if (const auto it = doc.find("grid"); it == doc.end()) {
    r.fail("grid", "is required");
  } else if (r.object(*it, "grid")) {
    r.allowed(*it, "grid", {"terminal_speeds", "lateral_offsets", "horizons", "dt"});
    r.numbers(*it, "grid", "terminal_speeds", sc.grid.terminal_speeds, true);
    r.numbers(*it, "grid", "lateral_offsets", sc.grid.lateral_offsets, true);
    r.numbers(*it, "grid", "horizons", sc.grid.horizons, true);
    r.number(*it, "grid", "dt", sc.grid.dt);
  }

  if (const auto it = doc.find("regulation"); it != doc.end() && r.object(*it, "regulation")) {
    r.allowed(*it, "regulation", {"w_ep", "delta0", "epsilon_min", "lambda_ep"});
    std::vector<double> w(sc.regulation.w_ep.begin(), sc.regulation.w_ep.end());
    r.numbers(*it, "regulation", "w_ep", w);
    if (w.size() == 4) {
      std::copy(w.begin(), w.end(), sc.regulation.w_ep.begin());
    } else {
      r.fail("regulation.w_ep", "must hold exactly 4 weights");
    }
    r.number(*it, "regulation", "delta0", sc.regulation.delta0);
    r.number(*it, "regulation", "epsilon_min", sc.regulation.epsilon_min);
    r.number(*it, "regulation", "lambda_ep", sc.regulation.lambda_ep);
  }

  sc.optimizer.dt = sc.grid.dt;
  if (const auto it = doc.find("optimizer"); it != doc.end() && r.object(*it, "optimizer")) {
    r.allowed(
      *it, "optimizer", {"mass", "lambda_s", "lambda_u", "dt", "max_iters", "armijo_c",
                         "step_shrink", "grad_tol"});
    r.number(*it, "optimizer", "mass", sc.optimizer.mass);
    r.number(*it, "optimizer", "lambda_s", sc.optimizer.lambda_s);
    r.number(*it, "optimizer", "lambda_u", sc.optimizer.lambda_u);
    r.number(*it, "optimizer", "dt", sc.optimizer.dt);
    r.integer(*it, "optimizer", "max_iters", sc.optimizer.max_iters);
    r.number(*it, "optimizer", "armijo_c", sc.optimizer.armijo_c);
    r.number(*it, "optimizer", "step_shrink", sc.optimizer.step_shrink);
    r.number(*it, "optimizer", "grad_tol", sc.optimizer.grad_tol);
  }

  if (const auto it = doc.find("assistive"); it != doc.end() && r.object(*it, "assistive")) {
    r.allowed(*it, "assistive", {"v_des", "k_s", "k_d", "c_d", "f_bar", "bumps"});
    r.number(*it, "assistive", "v_des", sc.assistive.v_des);
    r.number(*it, "assistive", "k_s", sc.assistive.k_s);
    r.number(*it, "assistive", "k_d", sc.assistive.k_d);
    r.number(*it, "assistive", "c_d", sc.assistive.c_d);
    r.number(*it, "assistive", "f_bar", sc.assistive.f_bar);
    if (const auto b = it->find("bumps"); b != it->end()) {
      if (!b->is_array()) {
        r.fail("assistive.bumps", "must be an array");
      } else {
        for (std::size_t i = 0; i < b->size(); ++i) {
          const std::string path = "assistive.bumps[" + std::to_string(i) + "]";
          if (!r.object((*b)[i], path)) {
            continue;
          }
          r.allowed((*b)[i], path, {"s_center", "width", "amplitude"});
          SurfaceBump bump;
          r.number((*b)[i], path, "s_center", bump.s_center, true);
          r.number((*b)[i], path, "width", bump.width, true);
          r.number((*b)[i], path, "amplitude", bump.amplitude, true);
          sc.assistive.bumps.push_back(bump);
        }
      }
    }
  }

  if (const auto it = doc.find("interaction"); it != doc.end() && r.object(*it, "interaction")) {
    r.allowed(*it, "interaction", {"alpha_bar", "r0", "v0", "cutoff"});
    r.number(*it, "interaction", "alpha_bar", sc.interaction.alpha_bar);
    r.number(*it, "interaction", "r0", sc.interaction.r0);
    r.number(*it, "interaction", "v0", sc.interaction.v0);
    r.number(*it, "interaction", "cutoff", sc.interaction.cutoff);
  }

  if (const auto it = doc.find("sim"); it == doc.end()) {
    r.fail("sim", "is required");
  } else if (r.object(*it, "sim")) {
    r.allowed(*it, "sim", {"cycle_period", "commit_horizon", "n_cycles", "seed", "sampling_jitter"});
    r.number(*it, "sim", "cycle_period", sc.sim.cycle_period);
    r.number(*it, "sim", "commit_horizon", sc.sim.commit_horizon);
    r.integer(*it, "sim", "n_cycles", sc.sim.n_cycles);
    r.unsigned64(*it, "sim", "seed", sc.sim.seed);
    r.number(*it, "sim", "sampling_jitter", sc.sim.sampling_jitter);
  }
}

template <typename Fn>
void collect(std::vector<std::string> & out, Fn && fn)
{
  try {
    fn();
  } catch (const PlannerError & e) {
    out.push_back(e.what());
  }
}

}  // namespace

std::vector<std::string> scenario_violations(const Scenario & sc)
{
  std::vector<std::string> out;
  auto fail = [&](const std::string & msg) { out.push_back(msg); };

  double length = 0.0;
  collect(out, [&] { length = build_reference_path(sc.waypoints).total_length(); });
  if (!sc.initial.is_finite()) {
    fail("initial_state must be finite");
  } else if (length > 0.0 && (sc.initial.s < 0.0 || sc.initial.s > length)) {
    fail("initial_state.s must lie on the reference path");
  }
  if (sc.initial.s_dot < 0.0) {
    fail("initial_state.s_dot must be >= 0");
  }
  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    const Neighbor & a = sc.agents[i];
    const std::string path = "agents[" + std::to_string(i) + "]";
    if (!a.position.allFinite() || !a.velocity.allFinite()) {
      fail(path + " position and velocity must be finite");
    }
    if (!(a.covariance_trace >= 0.0)) {
      fail(path + ".covariance_trace must be >= 0");
    }
  }
  if (!(sc.uncertainty_baseline >= 0.0)) {
    fail("uncertainty_baseline must be >= 0");
  }
  collect(out, [&] { validate_limits(sc.limits); });
  collect(out, [&] { validate_grid(sc.grid); });
  for (double v : sc.grid.terminal_speeds) {
    if (!(v >= 0.0)) {
      fail("grid.terminal_speeds must be >= 0");
      break;
    }
  }
  collect(out, [&] { validate_regulation(sc.regulation); });
  collect(out, [&] { validate_optimizer(sc.optimizer); });
  if (std::abs(sc.optimizer.dt - sc.grid.dt) > 1e-12) {
    fail("optimizer.dt must equal grid.dt");
  }
  collect(out, [&] { validate_assistive(sc.assistive); });
  collect(out, [&] { validate_interaction(sc.interaction); });

  const SimSettings & sim = sc.sim;
  if (!(sim.commit_horizon > 0.0)) {
    fail("sim.commit_horizon must be positive");
  } else {
    if (!sc.grid.horizons.empty() &&
        sim.commit_horizon >
          *std::min_element(sc.grid.horizons.begin(), sc.grid.horizons.end()) + 1e-12) {
      fail("sim.commit_horizon must not exceed the shortest grid horizon");
    }
    if (sc.grid.dt > 0.0) {
      const double steps = sim.commit_horizon / sc.grid.dt;
      if (std::abs(steps - std::round(steps)) > 1e-6) {
        fail("sim.commit_horizon must be a multiple of grid.dt");
      }
    }
  }
  if (std::abs(sim.cycle_period - sim.commit_horizon) > 1e-12) {
    fail("sim.cycle_period must equal sim.commit_horizon");
  }
  if (sim.n_cycles < 0) {
    fail("sim.n_cycles must be >= 0");
  }
  if (!(sim.sampling_jitter >= 0.0)) {
    fail("sim.sampling_jitter must be >= 0");
  }
  return out;
}

void validate_scenario(const Scenario & scenario)
{
  const auto violations = scenario_violations(scenario);
  if (!violations.empty()) {
    std::string msg;
    for (const auto & v : violations) {
      msg += (msg.empty() ? "" : "; ") + v;
    }
    throw PlannerError(ErrorCode::ScenarioInvalid, msg);
  }
}

ScenarioParse parse_scenario(std::string_view text)
{
  ScenarioParse out;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error & e) {
    out.violations.push_back(
      "malformed JSON at line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
      ": " + e.what());
    return out;
  }
  Reader reader(out.violations);
  read_document(doc, out.scenario, reader);
  if (out.violations.empty()) {
    out.violations = scenario_violations(out.scenario);
  }
  return out;
}

Scenario load_scenario(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PlannerError(ErrorCode::FileNotFound, "cannot read " + path.string());
  }
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  ScenarioParse parsed = parse_scenario(text);
  if (!parsed.ok()) {
    std::string msg;
    for (const auto & v : parsed.violations) {
      msg += (msg.empty() ? "" : "; ") + v;
    }
    throw PlannerError(ErrorCode::SchemaViolation, msg);
  }
  return std::move(parsed.scenario);
}

std::string scenario_to_json(const Scenario & sc)
{
  ordered doc;
  doc["schema_version"] = kScenarioSchemaVersion;
  doc["name"] = sc.name;
  ordered wps = ordered::array();
  for (const Point2 & p : sc.waypoints) {
    wps.push_back({p.x(), p.y()});
  }
  doc["reference_path"]["waypoints"] = wps;
  doc["initial_state"] = {
    {"s", sc.initial.s}, {"s_dot", sc.initial.s_dot}, {"s_ddot", sc.initial.s_ddot},
    {"d", sc.initial.d}, {"d_dot", sc.initial.d_dot}, {"d_ddot", sc.initial.d_ddot}};
  ordered agents = ordered::array();
  for (const Neighbor & a : sc.agents) {
    agents.push_back(
      {{"position", {a.position.x(), a.position.y()}},
       {"velocity", {a.velocity.x(), a.velocity.y()}},
       {"covariance_trace", a.covariance_trace}});
  }
  doc["agents"] = agents;
  doc["uncertainty_baseline"] = sc.uncertainty_baseline;
  doc["limits"] = {
    {"v_max", sc.limits.v_max}, {"a_max", sc.limits.a_max}, {"j_max", sc.limits.j_max},
    {"kappa_max", sc.limits.kappa_max}, {"yaw_rate_max", sc.limits.yaw_rate_max},
    {"kappa_rate_max", sc.limits.kappa_rate_max}};
  doc["grid"] = {
    {"terminal_speeds", sc.grid.terminal_speeds}, {"lateral_offsets", sc.grid.lateral_offsets},
    {"horizons", sc.grid.horizons}, {"dt", sc.grid.dt}};
  doc["regulation"] = {
    {"w_ep", sc.regulation.w_ep}, {"delta0", sc.regulation.delta0},
    {"epsilon_min", sc.regulation.epsilon_min}, {"lambda_ep", sc.regulation.lambda_ep}};
  doc["optimizer"] = {
    {"mass", sc.optimizer.mass}, {"lambda_s", sc.optimizer.lambda_s},
    {"lambda_u", sc.optimizer.lambda_u}, {"dt", sc.optimizer.dt},
    {"max_iters", sc.optimizer.max_iters}, {"armijo_c", sc.optimizer.armijo_c},
    {"step_shrink", sc.optimizer.step_shrink}, {"grad_tol", sc.optimizer.grad_tol}};
  ordered bumps = ordered::array();
  for (const SurfaceBump & b : sc.assistive.bumps) {
    bumps.push_back({{"s_center", b.s_center}, {"width", b.width}, {"amplitude", b.amplitude}});
  }
  doc["assistive"] = {
    {"v_des", sc.assistive.v_des}, {"k_s", sc.assistive.k_s}, {"k_d", sc.assistive.k_d},
    {"c_d", sc.assistive.c_d}, {"f_bar", sc.assistive.f_bar}, {"bumps", bumps}};
  doc["interaction"] = {
    {"alpha_bar", sc.interaction.alpha_bar}, {"r0", sc.interaction.r0},
    {"v0", sc.interaction.v0}, {"cutoff", sc.interaction.cutoff}};
  doc["sim"] = {
    {"cycle_period", sc.sim.cycle_period}, {"commit_horizon", sc.sim.commit_horizon},
    {"n_cycles", sc.sim.n_cycles}, {"seed", sc.sim.seed},
    {"sampling_jitter", sc.sim.sampling_jitter}};
  return doc.dump(2) + "\n";
}

}  // namespace frenet_planner
