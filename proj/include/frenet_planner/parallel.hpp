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

#ifndef FRENET_PLANNER__PARALLEL_HPP_
#define FRENET_PLANNER__PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace frenet_planner
{

/// Worker count: PLANNER_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for every i in [0, count). Each index is visited exactly
/// once; callers write results to per-index slots so the outcome does not
/// depend on scheduling. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> & body);

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__PARALLEL_HPP_
