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

#ifndef FRENET_PLANNER__REPORT_IO_HPP_
#define FRENET_PLANNER__REPORT_IO_HPP_

#include "frenet_planner/evaluation.hpp"
#include "frenet_planner/replanning_sim.hpp"
#include "frenet_planner/trajectory.hpp"

#include <string>
#include <vector>

namespace frenet_planner
{

/// Locale-independent, 9 significant digits; "nan", "inf", "-inf" for
/// non-finite values.
std::string format_number(double value);

/// Whole-log JSON document (cycle summaries, executed samples, splices).
std::string simlog_to_json(const SimLog & log);

/// Executed trajectory, one row per sample.
std::string profiles_csv(const SimLog & log);
/// Magnitude statistics of executed jerk per axis, for the run and per cycle.
std::string jerk_stats_csv(const SimLog & log);
/// Nearest-neighbor endpoint statistics, one row per cycle cluster.
std::string endpoint_nn_csv(const SimLog & log);
/// One row per evaluated candidate with violation flags and margins.
std::string feasibility_csv(const SimLog & log);

/// Terminal 6-vectors of a cluster with nearest-neighbor distance and the
/// gap to the preceding terminal.
std::string cluster_endpoints_csv(const TrajectoryCluster & cluster);
/// Every sampled state of every candidate.
std::string cluster_full_csv(const TrajectoryCluster & cluster);

struct HistogramBin
{
  double lower{0.0};
  double upper{0.0};
  std::size_t count{0};
};
/// Fixed-width bins starting at 0 covering every value.
std::vector<HistogramBin> histogram(const std::vector<double> & values, double width);
std::string histogram_csv(const std::vector<HistogramBin> & bins);
/// Shannon entropy (nats) of the bin occupancy.
double histogram_entropy(const std::vector<HistogramBin> & bins);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__REPORT_IO_HPP_
