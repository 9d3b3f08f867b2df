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

#ifndef FRENET_PLANNER__ERROR_HPP_
#define FRENET_PLANNER__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace frenet_planner
{

enum class ErrorCode
{
  TooFewWaypoints,
  DuplicateWaypoint,
  OutOfRangeS,
  InvalidLateralOffset,
  ProjectionAmbiguous,
  OutsideTube,
  NonPositiveSpan,
  IllConditioned,
  InvalidGrid,
  InvalidInitialState,
  EmptyCluster,
  PathTooShort,
  CoincidentNeighbor,
  TooFewEndpoints,
  EmptyInput,
  NoFeasibleCandidate,
  ScenarioInvalid,
  FileNotFound,
  SchemaViolation,
};

std::string_view to_string(ErrorCode code);

/// Domain failure raised by the planner library. The code identifies the
/// failure class; the message carries the human-readable detail.
class PlannerError : public std::runtime_error
{
public:
  PlannerError(ErrorCode code, const std::string & what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace frenet_planner

#endif  // FRENET_PLANNER__ERROR_HPP_
