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

#ifndef CMM_SCENARIO_SCENARIO_H_
#define CMM_SCENARIO_SCENARIO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/common/config_file.h"
#include "cmm/common/geofence.h"
#include "cmm/scenario/idm.h"
#include "cmm/scenario/types.h"

namespace cmm {

// Piecewise-linear speed over simulation time; constant outside the knots.
struct SpeedProfile {
  std::vector<std::pair<double, double>> knots;  // (t [s], v [m/s])

  double SpeedAt(double t) const;
  // Parses "t:v, t:v, ..." with strictly increasing t and v >= 0.
  static absl::StatusOr<SpeedProfile> Parse(const std::string& text);
  friend bool operator==(const SpeedProfile&, const SpeedProfile&) = default;
};

// Fixed-time two-phase plan: north-south green, yellow, all-red, then
// east-west green, yellow, all-red.
struct SignalPlan {
  bool enabled = true;
  double ns_green = 20.0;
  double ew_green = 20.0;
  double yellow = 3.0;
  double all_red = 1.0;
  double offset = 0.0;

  SignalPhase PhaseAt(Approach approach, double t) const;
  friend bool operator==(const SignalPlan&, const SignalPlan&) = default;
};

// Randomly placed background traffic queued upstream of the stop lines.
struct DemandConfig {
  int vehicles = 12;
  double truck_fraction = 0.1;
  int pedestrians = 2;
  double initial_speed = 8.0;
  double min_spacing = 10.0;  // bumper-to-bumper at spawn
  double pedestrian_speed = 1.4;

  friend bool operator==(const DemandConfig&, const DemandConfig&) = default;
};

// An explicitly placed agent (e.g. the vehicles of a scripted case study).
struct AgentSpec {
  std::string name;
  AgentClass cls = AgentClass::kCar;
  ControlMode control = ControlMode::kIdm;
  Approach approach = Approach::kEastbound;
  int lane_index = 0;
  double station = 0.0;
  double speed = 0.0;
  std::optional<Dimensions> dims;
  SpeedProfile profile;  // used when control == kScripted

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

struct ScenarioConfig {
  uint64_t seed = 1;
  double dt = 0.1;
  double lane_width = 3.5;
  double approach_length = 120.0;
  int lanes_per_approach = 1;
  SignalPlan signals;
  DemandConfig demand;
  IdmParams idm;
  std::vector<AgentSpec> agents;

  absl::Status Validate() const;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Reads [scenario], [signal], [demand], [idm] and every [agent:<name>] section.
absl::StatusOr<ScenarioConfig> ParseScenarioConfig(const ConfigFile& file);

struct RoadLayout {
  double lane_width = 3.5;
  double approach_length = 120.0;
  int lanes_per_approach = 1;
  std::vector<Lane> lanes;

  const Lane* FindVehicleLane(Approach approach, int index) const;
};

RoadLayout BuildRoadLayout(const ScenarioConfig& config);

// Acceleration commands for externally controlled agents, keyed by agent id.
using AccelCommands = std::map<int, double>;

// A validated, immutable scenario: road geometry, signal plan, scripted
// profiles and the tick-0 state. Stepping is a pure function of its inputs.
class Scenario {
 public:
  static absl::StatusOr<Scenario> Create(ScenarioConfig config);

  const ScenarioConfig& config() const { return config_; }
  const RoadLayout& road() const { return road_; }
  const WorldState& initial_state() const { return initial_state_; }
  double dt() const { return config_.dt; }
  const Lane& lane(int id) const { return road_.lanes[id]; }
  // Agent id assigned to the named AgentSpec, if any.
  std::optional<int> AgentIdForName(const std::string& name) const;

  // Advances one tick of `dt()` with forward Euler integration.
  WorldState Step(const WorldState& state,
                  const AccelCommands& commands = {}) const;

 private:
  Scenario() = default;

  struct Leader {
    double gap = 0.0;  // +inf on a free road
    double speed = 0.0;
    bool stop_line = false;
  };
  // Nearest obstacle ahead of `agent` on its lane: another vehicle, or the
  // stop line when the approach must stop.
  Leader FindLeader(const WorldState& state, const AgentState& agent) const;

  ScenarioConfig config_;
  RoadLayout road_;
  WorldState initial_state_;
  std::map<int, SpeedProfile> profiles_;
  std::map<std::string, int> named_ids_;
};

// Tick-0 state of `config`.
absl::StatusOr<WorldState> InitScenario(const ScenarioConfig& config);

// Ground-truth object in the sensor frame.
struct LabeledBox {
  int agent_id = 0;
  AgentClass cls = AgentClass::kCar;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;  // box center height relative to the sensor origin
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  double yaw = 0.0;

  OrientedBox footprint() const { return {x, y, length, width, yaw}; }
  friend bool operator==(const LabeledBox&, const LabeledBox&) = default;
};

// Labels for every agent whose box center lies inside `region`.
std::vector<LabeledBox> GroundTruthObjects(const WorldState& state,
                                           const SensorMount& sensor,
                                           const Geofence& region);

// Trajectory ground-truth CSV: tick,id,class,x,y,yaw,v,a
void WriteGroundTruthCsvHeader(std::ostream& out);
void AppendGroundTruthCsv(const WorldState& state, std::ostream& out);

}  // namespace cmm

#endif  // CMM_SCENARIO_SCENARIO_H_
