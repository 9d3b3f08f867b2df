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

#include "frenet_planner/report_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <sstream>

namespace frenet_planner
{

namespace
{

using ordered = nlohmann::ordered_json;

ordered number_json(double v)
{
  return std::isfinite(v) ? ordered(v) : ordered(nullptr);
}

ordered state_json(const FrenetState & st)
{
  return ordered{
    {"s", number_json(st.s)},         {"s_dot", number_json(st.s_dot)},
    {"s_ddot", number_json(st.s_ddot)}, {"d", number_json(st.d)},
    {"d_dot", number_json(st.d_dot)}, {"d_ddot", number_json(st.d_ddot)}};
}

class CsvWriter
{
public:
  explicit CsvWriter(std::initializer_list<const char *> header)
  {
    bool first = true;
    for (const char * h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }

  CsvWriter & num(double v) { return cell(format_number(v)); }
  CsvWriter & integer(long long v) { return cell(std::to_string(v)); }
  CsvWriter & text(const std::string & v) { return cell(v); }
  void end()
  {
    out_ << '\n';
    fresh_ = true;
  }
  std::string str() const { return out_.str(); }

private:
  CsvWriter & cell(const std::string & v)
  {
    out_ << (fresh_ ? "" : ",") << v;
    fresh_ = false;
    return *this;
  }

  std::ostringstream out_;
  bool fresh_{true};
};

void sample_cells(CsvWriter & w, const TrajectorySample & smp)
{
  const FrenetState & st = smp.state;
  w.num(smp.t).num(st.s).num(st.d).num(st.s_dot).num(st.s_ddot).num(smp.s_jerk)
    .num(st.d_dot).num(st.d_ddot).num(smp.d_jerk);
}

void axis_row(CsvWriter & w, const std::string & scope, const char * axis, const AxisStats & a, std::size_t n)
{
  w.text(scope).text(axis).num(a.median).num(a.iqr).num(a.rms).num(a.max)
    .integer(static_cast<long long>(n));
  w.end();
}

}  // namespace

std::string format_number(double value)
{
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::string simlog_to_json(const SimLog & log)
{
  ordered doc;
  doc["scenario"] = log.scenario_name;
  doc["switches"] = {
    {"spacing", log.switches.spacing}, {"optimize", log.switches.optimize},
    {"momentum_suppression", log.switches.momentum_suppression},
    {"endpoint_energy", log.switches.endpoint_energy}};
  doc["seed"] = log.seed;
  doc["status"] = std::string(to_string(log.status));
  doc["diagnostic"] = log.diagnostic;
  ordered cycles = ordered::array();
  for (const CycleRecord & rec : log.cycles) {
    ordered c;
    c["cycle"] = rec.cycle;
    c["t_start"] = rec.t_start;
    c["initial"] = state_json(rec.initial);
    ordered agents = ordered::array();
    for (const Point2 & p : rec.agent_positions) {
      agents.push_back({p.x(), p.y()});
    }
    c["agent_positions"] = agents;
    c["candidate_count"] = rec.candidate_count;
    c["budget_exhausted"] = rec.budget_exhausted;
    if (rec.cluster_stats) {
      c["cluster_stats"] = {
        {"nn_mean", rec.cluster_stats->nn_mean}, {"nn_std", rec.cluster_stats->nn_std},
        {"nn_min", rec.cluster_stats->nn_min}, {"nn_max", rec.cluster_stats->nn_max}};
    } else {
      c["cluster_stats"] = nullptr;
    }
    if (!rec.reports.empty()) {
      ordered rates;
      for (const Constraint k : kAllConstraints) {
        rates[std::string(to_string(k))] = rec.feasibility.rate(k);
      }
      c["feasibility"] = {{"overall", rec.feasibility.overall}, {"rates", rates}};
    } else {
      c["feasibility"] = nullptr;
    }
    c["selected"] = rec.selected ? ordered(*rec.selected) : ordered(nullptr);
    c["cost"] = rec.selected ? number_json(rec.cost) : ordered(nullptr);
    ordered executed = ordered::array();
    for (const TrajectorySample & smp : rec.executed) {
      ordered e = state_json(smp.state);
      e["t"] = smp.t;
      e["s_jerk"] = number_json(smp.s_jerk);
      e["d_jerk"] = number_json(smp.d_jerk);
      executed.push_back(e);
    }
    c["executed"] = executed;
    cycles.push_back(c);
  }
  doc["cycles"] = cycles;
  ordered splices = ordered::array();
  for (const SpliceRecord & sp : log.splices) {
    splices.push_back(
      {{"cycle", sp.cycle}, {"position_jump", sp.position_jump},
       {"velocity_jump", sp.velocity_jump}, {"acceleration_jump", sp.acceleration_jump}});
  }
  doc["splices"] = splices;
  doc["final_state"] = state_json(log.final_state);
  return doc.dump(2) + "\n";
}

std::string profiles_csv(const SimLog & log)
{
  CsvWriter w{"t", "s", "d", "s_dot", "s_ddot", "s_jerk", "d_dot", "d_ddot", "d_jerk"};
  for (const TrajectorySample & smp : executed_trajectory(log)) {
    sample_cells(w, smp);
    w.end();
  }
  return w.str();
}

std::string jerk_stats_csv(const SimLog & log)
{
  CsvWriter w{"scope", "axis", "median_abs", "iqr_abs", "rms", "max_abs", "samples"};
  const auto executed = executed_trajectory(log);
  const JerkStats run = jerk_statistics(executed);
  axis_row(w, "run", "longitudinal", run.lon, executed.size());
  axis_row(w, "run", "lateral", run.lat, executed.size());
  for (const CycleRecord & rec : log.cycles) {
    if (rec.executed.empty()) {
      continue;
    }
    const JerkStats js = jerk_statistics(rec.executed);
    const std::string scope = "cycle_" + std::to_string(rec.cycle);
    axis_row(w, scope, "longitudinal", js.lon, rec.executed.size());
    axis_row(w, scope, "lateral", js.lat, rec.executed.size());
  }
  return w.str();
}

std::string endpoint_nn_csv(const SimLog & log)
{
  CsvWriter w{"cycle", "candidates", "nn_mean", "nn_std", "nn_min", "nn_max", "budget_exhausted"};
  for (const CycleRecord & rec : log.cycles) {
    if (!rec.cluster_stats) {
      continue;
    }
    const ClusterStats & cs = *rec.cluster_stats;
    w.integer(rec.cycle).integer(static_cast<long long>(rec.candidate_count))
      .num(cs.nn_mean).num(cs.nn_std).num(cs.nn_min).num(cs.nn_max)
      .integer(rec.budget_exhausted ? 1 : 0);
    w.end();
  }
  return w.str();
}

std::string feasibility_csv(const SimLog & log)
{
  CsvWriter w{
    "cycle", "candidate", "feasible", "selected", "cost",
    "velocity", "acceleration", "jerk", "curvature", "yaw_rate", "curvature_rate",
    "margin_velocity", "margin_acceleration", "margin_jerk", "margin_curvature",
    "margin_yaw_rate", "margin_curvature_rate"};
  for (const CycleRecord & rec : log.cycles) {
    for (std::size_t i = 0; i < rec.reports.size(); ++i) {
      const FeasibilityReport & r = rec.reports[i];
      w.integer(rec.cycle).integer(static_cast<long long>(i)).integer(r.feasible ? 1 : 0)
        .integer(rec.selected && *rec.selected == i ? 1 : 0)
        .num(i < rec.costs.size() ? rec.costs[i] : std::nan(""));
      for (std::size_t k = 0; k < kConstraintCount; ++k) {
        w.integer(r.violations[k] ? 1 : 0);
      }
      for (std::size_t k = 0; k < kConstraintCount; ++k) {
        w.num(r.worst_margins[k]);
      }
      w.end();
    }
  }
  return w.str();
}

std::string cluster_endpoints_csv(const TrajectoryCluster & cluster)
{
  CsvWriter w{
    "index", "s", "s_dot", "s_ddot", "d", "d_dot", "d_ddot", "horizon", "nn_distance",
    "gap_to_previous"};
  std::vector<double> nn(cluster.candidates.size(), std::nan(""));
  if (cluster.candidates.size() >= 2) {
    nn = nn_distance_stats(cluster).nn_distances;
  }
  for (std::size_t i = 0; i < cluster.candidates.size(); ++i) {
    const TrajectoryCandidate & c = cluster.candidates[i];
    const FrenetState & st = c.terminal;
    const double gap =
      i == 0 ? std::nan("") : state_distance(cluster.candidates[i - 1].terminal, st);
    w.integer(static_cast<long long>(i)).num(st.s).num(st.s_dot).num(st.s_ddot).num(st.d)
      .num(st.d_dot).num(st.d_ddot).num(c.horizon).num(nn[i]).num(gap);
    w.end();
  }
  return w.str();
}

std::string cluster_full_csv(const TrajectoryCluster & cluster)
{
  CsvWriter w{"candidate", "t", "s", "d", "s_dot", "s_ddot", "s_jerk", "d_dot", "d_ddot", "d_jerk"};
  for (std::size_t i = 0; i < cluster.candidates.size(); ++i) {
    for (const TrajectorySample & smp : cluster.candidates[i].samples) {
      w.integer(static_cast<long long>(i));
      sample_cells(w, smp);
      w.end();
    }
  }
  return w.str();
}

std::vector<HistogramBin> histogram(const std::vector<double> & values, double width)
{
  if (!(width > 0.0)) {
    return {};
  }
  double top = 0.0;
  for (const double v : values) {
    top = std::max(top, v);
  }
  const auto count = static_cast<std::size_t>(std::floor(top / width)) + 1;
  std::vector<HistogramBin> bins(count);
  for (std::size_t b = 0; b < count; ++b) {
    bins[b].lower = static_cast<double>(b) * width;
    bins[b].upper = static_cast<double>(b + 1) * width;
  }
  for (const double v : values) {
    const auto b = std::min(count - 1, static_cast<std::size_t>(std::floor(std::max(v, 0.0) / width)));
    ++bins[b].count;
  }
  return bins;
}

std::string histogram_csv(const std::vector<HistogramBin> & bins)
{
  CsvWriter w{"bin_lower", "bin_upper", "count"};
  for (const HistogramBin & b : bins) {
    w.num(b.lower).num(b.upper).integer(static_cast<long long>(b.count));
    w.end();
  }
  return w.str();
}

double histogram_entropy(const std::vector<HistogramBin> & bins)
{
  std::size_t total = 0;
  for (const HistogramBin & b : bins) {
    total += b.count;
  }
  if (total == 0) {
    return 0.0;
  }
  double h = 0.0;
  for (const HistogramBin & b : bins) {
    if (b.count > 0) {
      const double p = static_cast<double>(b.count) / static_cast<double>(total);
      h -= p * std::log(p);
    }
  }
  return h;
}

}  // namespace frenet_planner
