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

namespace frenet_planner
{

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::TooFewWaypoints: return "TooFewWaypoints";
    case ErrorCode::DuplicateWaypoint: return "DuplicateWaypoint";
    case ErrorCode::OutOfRangeS: return "OutOfRangeS";
    case ErrorCode::InvalidLateralOffset: return "InvalidLateralOffset";
    case ErrorCode::ProjectionAmbiguous: return "ProjectionAmbiguous";
    case ErrorCode::OutsideTube: return "OutsideTube";
    case ErrorCode::NonPositiveSpan: return "NonPositiveSpan";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidInitialState: return "InvalidInitialState";
    case ErrorCode::EmptyCluster: return "EmptyCluster";
    case ErrorCode::PathTooShort: return "PathTooShort";
    case ErrorCode::CoincidentNeighbor: return "CoincidentNeighbor";
    case ErrorCode::TooFewEndpoints: return "TooFewEndpoints";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NoFeasibleCandidate: return "NoFeasibleCandidate";
    case ErrorCode::ScenarioInvalid: return "ScenarioInvalid";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
  }
  return "Unknown";
}

}  // namespace frenet_planner
