/* Copyright 2026 The CMM Co-Simulation Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CMM_SCENARIO_TYPES_H_
#define CMM_SCENARIO_TYPES_H_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/common/geometry.h"

namespace cmm {

enum class AgentClass { kCar, kTruck, kPedestrian };

std::string_view AgentClassName(AgentClass cls);
absl::StatusOr<AgentClass> ParseAgentClass(std::string_view name);

// Direction of travel of an approach into the intersection.
enum class Approach { kEastbound = 0, kWestbound = 1, kNorthbound = 2, kSouthbound = 3 };
inline constexpr int kNumApproaches = 4;

std::string_view ApproachName(Approach approach);
absl::StatusOr<Approach> ParseApproach(std::string_view name);

enum class SignalPhase { kGreen, kYellow, kRed };

enum class ControlMode {
  kIdm,       // car-following against the same-lane leader / stop line
  kScripted,  // follows a speed-vs-time profile
  kExternal,  // acceleration supplied by the caller each step
  kWalker,    // constant speed, no interaction
};

absl::StatusOr<ControlMode> ParseControlMode(std::string_view name);

struct Dimensions {
  double length = 4.5;
  double width = 1.8;
  double height = 1.5;

  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

Dimensions DefaultDimensions(AgentClass cls);

// Straight lane (or crosswalk) parameterized by station along its heading.
struct Lane {
  int id = 0;
  bool crosswalk = false;
  Approach approach = Approach::kEastbound;  // meaningless for crosswalks
  int index = 0;                             // 0 = next to the center line
  Vec2 origin;
  double heading = 0.0;
  double length = 0.0;
  double stop_station = 0.0;  // station of the stop line (vehicle lanes)

  Vec2 direction() const { return {std::cos(heading), std::sin(heading)}; }
  Vec2 PointAt(double station) const { return origin + station * direction(); }
  double StationOf(Vec2 p) const { return Dot(p - origin, direction()); }
  double LateralOffsetOf(Vec2 p) const { return Cross(direction(), p - origin); }
};

struct AgentState {
  int id = 0;
  AgentClass cls = AgentClass::kCar;
  ControlMode control = ControlMode::kIdm;
  Pose2D pose;
  double speed = 0.0;  // >= 0
  double accel = 0.0;
  Dimensions dims;
  // Route: the agent travels along a single straight lane.
  int lane_id = 0;
  double station = 0.0;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct WorldState {
  int64_t tick = 0;
  double dt = 0.1;
  std::vector<AgentState> agents;  // sorted by id
  std::array<SignalPhase, kNumApproaches> signal_phase{};
  // Agents removed at the end of their lane during the step that produced
  // this state.
  std::vector<int> despawned;
  // Cumulative count of steps in which some vehicle had a non-positive gap.
  int64_t collision_events = 0;

  double sim_time() const { return static_cast<double>(tick) * dt; }
  const AgentState* Find(int id) const;

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

}  // namespace cmm

#endif  // CMM_SCENARIO_TYPES_H_
