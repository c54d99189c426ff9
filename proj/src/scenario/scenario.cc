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

#include "cmm/scenario/scenario.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "cmm/common/status_macros.h"
#include "cmm/common/text_format.h"

namespace cmm {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStopLineSetback = 1.0;  // from the intersection box edge
constexpr double kCrosswalkSetback = 2.0;
constexpr double kCrosswalkOverhang = 1.0;

bool IsVehicle(const AgentState& a) { return a.cls != AgentClass::kPedestrian; }

int CrosswalkLaneId(int lanes_per_approach, Approach leg) {
  return kNumApproaches * lanes_per_approach + static_cast<int>(leg);
}

}  // namespace

double SpeedProfile::SpeedAt(double t) const {
  if (knots.empty()) return 0.0;
  if (t <= knots.front().first) return knots.front().second;
  if (t >= knots.back().first) return knots.back().second;
  const auto upper = std::upper_bound(
      knots.begin(), knots.end(), t,
      [](double value, const auto& knot) { return value < knot.first; });
  const auto& [t1, v1] = *upper;
  const auto& [t0, v0] = *(upper - 1);
  return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
}

absl::StatusOr<SpeedProfile> SpeedProfile::Parse(const std::string& text) {
  SpeedProfile profile;
  for (absl::string_view item :
       absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    std::vector<absl::string_view> parts = absl::StrSplit(item, ':');
    double t = 0.0;
    double v = 0.0;
    if (parts.size() != 2 ||
        !absl::SimpleAtod(absl::StripAsciiWhitespace(parts[0]), &t) ||
        !absl::SimpleAtod(absl::StripAsciiWhitespace(parts[1]), &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad speed profile knot '", item, "'"));
    }
    if (v < 0.0) {
      return absl::InvalidArgumentError("speed profile speeds must be >= 0");
    }
    if (!profile.knots.empty() && t <= profile.knots.back().first) {
      return absl::InvalidArgumentError(
          "speed profile times must be strictly increasing");
    }
    profile.knots.emplace_back(t, v);
  }
  return profile;
}

SignalPhase SignalPlan::PhaseAt(Approach approach, double t) const {
  if (!enabled) return SignalPhase::kGreen;
  const double cycle = ns_green + ew_green + 2.0 * (yellow + all_red);
  double u = std::fmod(t + offset, cycle);
  if (u < 0.0) u += cycle;
  const bool ns = approach == Approach::kNorthbound ||
                  approach == Approach::kSouthbound;
  // Shift so that this approach's green starts at u = 0.
  if (!ns) {
    u -= ns_green + yellow + all_red;
    if (u < 0.0) u += cycle;
  }
  const double green = ns ? ns_green : ew_green;
  if (u < green) return SignalPhase::kGreen;
  if (u < green + yellow) return SignalPhase::kYellow;
  return SignalPhase::kRed;
}

absl::Status ScenarioConfig::Validate() const {
  if (!(dt > 0.0)) return absl::InvalidArgumentError("dt must be positive");
  if (!(lane_width > 0.0) || !(approach_length > 0.0) ||
      lanes_per_approach < 1) {
    return absl::InvalidArgumentError("road geometry must be positive");
  }
  if (approach_length <= lanes_per_approach * lane_width + kCrosswalkSetback +
                             kStopLineSetback) {
    return absl::InvalidArgumentError(
        "approach_length too short for the intersection box");
  }
  if (demand.vehicles < 0 || demand.pedestrians < 0) {
    return absl::InvalidArgumentError("demand counts must be non-negative");
  }
  if (demand.truck_fraction < 0.0 || demand.truck_fraction > 1.0) {
    return absl::InvalidArgumentError("truck_fraction must be in [0, 1]");
  }
  if (demand.initial_speed < 0.0 || !(demand.min_spacing > 0.0) ||
      !(demand.pedestrian_speed >= 0.0)) {
    return absl::InvalidArgumentError("invalid demand speeds/spacing");
  }
  if (signals.enabled &&
      !(signals.ns_green > 0 && signals.ew_green > 0 && signals.yellow >= 0 &&
        signals.all_red >= 0)) {
    return absl::InvalidArgumentError("invalid signal timings");
  }
  CMM_RETURN_IF_ERROR(idm.Validate());
  for (const AgentSpec& spec : agents) {
    if (spec.lane_index < 0 || spec.lane_index >= lanes_per_approach) {
      return absl::InvalidArgumentError(
          absl::StrCat("agent ", spec.name, ": lane index out of range"));
    }
    if (spec.speed < 0.0 || !std::isfinite(spec.station)) {
      return absl::InvalidArgumentError(
          absl::StrCat("agent ", spec.name, ": invalid speed or station"));
    }
    if (spec.dims && !(spec.dims->length > 0 && spec.dims->width > 0 &&
                       spec.dims->height > 0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("agent ", spec.name, ": dimensions must be positive"));
    }
    if (spec.control == ControlMode::kScripted && spec.profile.knots.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("agent ", spec.name, ": scripted without profile"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ScenarioConfig> ParseScenarioConfig(const ConfigFile& file) {
  ScenarioConfig c;
  CMM_ASSIGN_OR_RETURN(const int64_t seed,
                       file.GetInt("scenario.seed", static_cast<int64_t>(c.seed)));
  c.seed = static_cast<uint64_t>(seed);
  CMM_ASSIGN_OR_RETURN(c.dt, file.GetDouble("scenario.dt", c.dt));
  CMM_ASSIGN_OR_RETURN(c.lane_width,
                       file.GetDouble("scenario.lane_width", c.lane_width));
  CMM_ASSIGN_OR_RETURN(c.approach_length, file.GetDouble("scenario.approach_length",
                                                         c.approach_length));
  CMM_ASSIGN_OR_RETURN(const int64_t lanes,
                       file.GetInt("scenario.lanes_per_approach", c.lanes_per_approach));
  c.lanes_per_approach = static_cast<int>(lanes);

  CMM_ASSIGN_OR_RETURN(c.signals.enabled,
                       file.GetBool("signal.enabled", c.signals.enabled));
  CMM_ASSIGN_OR_RETURN(c.signals.ns_green,
                       file.GetDouble("signal.ns_green", c.signals.ns_green));
  CMM_ASSIGN_OR_RETURN(c.signals.ew_green,
                       file.GetDouble("signal.ew_green", c.signals.ew_green));
  CMM_ASSIGN_OR_RETURN(c.signals.yellow,
                       file.GetDouble("signal.yellow", c.signals.yellow));
  CMM_ASSIGN_OR_RETURN(c.signals.all_red,
                       file.GetDouble("signal.all_red", c.signals.all_red));
  CMM_ASSIGN_OR_RETURN(c.signals.offset,
                       file.GetDouble("signal.offset", c.signals.offset));

  CMM_ASSIGN_OR_RETURN(const int64_t vehicles,
                       file.GetInt("demand.vehicles", c.demand.vehicles));
  CMM_ASSIGN_OR_RETURN(const int64_t pedestrians,
                       file.GetInt("demand.pedestrians", c.demand.pedestrians));
  c.demand.vehicles = static_cast<int>(vehicles);
  c.demand.pedestrians = static_cast<int>(pedestrians);
  CMM_ASSIGN_OR_RETURN(c.demand.truck_fraction,
                       file.GetDouble("demand.truck_fraction", c.demand.truck_fraction));
  CMM_ASSIGN_OR_RETURN(c.demand.initial_speed,
                       file.GetDouble("demand.initial_speed", c.demand.initial_speed));
  CMM_ASSIGN_OR_RETURN(c.demand.min_spacing,
                       file.GetDouble("demand.min_spacing", c.demand.min_spacing));
  CMM_ASSIGN_OR_RETURN(c.demand.pedestrian_speed,
                       file.GetDouble("demand.pedestrian_speed",
                                      c.demand.pedestrian_speed));

  CMM_ASSIGN_OR_RETURN(c.idm.desired_speed,
                       file.GetDouble("idm.v0", c.idm.desired_speed));
  CMM_ASSIGN_OR_RETURN(c.idm.time_headway,
                       file.GetDouble("idm.time_headway", c.idm.time_headway));
  CMM_ASSIGN_OR_RETURN(c.idm.max_accel,
                       file.GetDouble("idm.max_accel", c.idm.max_accel));
  CMM_ASSIGN_OR_RETURN(c.idm.comfortable_decel,
                       file.GetDouble("idm.comfortable_decel", c.idm.comfortable_decel));
  CMM_ASSIGN_OR_RETURN(c.idm.min_gap, file.GetDouble("idm.min_gap", c.idm.min_gap));
  CMM_ASSIGN_OR_RETURN(c.idm.exponent,
                       file.GetDouble("idm.exponent", c.idm.exponent));
  CMM_ASSIGN_OR_RETURN(c.idm.emergency_decel,
                       file.GetDouble("idm.emergency_decel", c.idm.emergency_decel));

  for (const std::string& section : file.SectionsWithPrefix("agent:")) {
    AgentSpec spec;
    spec.name = section.substr(std::string("agent:").size());
    const std::string k = section + ".";
    CMM_ASSIGN_OR_RETURN(spec.cls, ParseAgentClass(file.GetString(k + "class", "car")));
    CMM_ASSIGN_OR_RETURN(spec.control,
                         ParseControlMode(file.GetString(k + "control", "idm")));
    CMM_ASSIGN_OR_RETURN(spec.approach,
                         ParseApproach(file.GetString(k + "approach", "eb")));
    CMM_ASSIGN_OR_RETURN(const int64_t lane, file.GetInt(k + "lane", 0));
    spec.lane_index = static_cast<int>(lane);
    CMM_ASSIGN_OR_RETURN(spec.station, file.GetDouble(k + "station", 0.0));
    CMM_ASSIGN_OR_RETURN(spec.speed, file.GetDouble(k + "speed", 0.0));
    if (file.Has(k + "length") || file.Has(k + "width") ||
        file.Has(k + "height")) {
      Dimensions d = DefaultDimensions(spec.cls);
      CMM_ASSIGN_OR_RETURN(d.length, file.GetDouble(k + "length", d.length));
      CMM_ASSIGN_OR_RETURN(d.width, file.GetDouble(k + "width", d.width));
      CMM_ASSIGN_OR_RETURN(d.height, file.GetDouble(k + "height", d.height));
      spec.dims = d;
    }
    if (file.Has(k + "profile")) {
      CMM_ASSIGN_OR_RETURN(spec.profile,
                           SpeedProfile::Parse(file.GetString(k + "profile", "")));
    }
    c.agents.push_back(std::move(spec));
  }
  CMM_RETURN_IF_ERROR(c.Validate());
  return c;
}

const Lane* RoadLayout::FindVehicleLane(Approach approach, int index) const {
  if (index < 0 || index >= lanes_per_approach) return nullptr;
  return &lanes[static_cast<int>(approach) * lanes_per_approach + index];
}

RoadLayout BuildRoadLayout(const ScenarioConfig& config) {
  RoadLayout road;
  road.lane_width = config.lane_width;
  road.approach_length = config.approach_length;
  road.lanes_per_approach = config.lanes_per_approach;
  const double w = config.lane_width;
  const double len = config.approach_length;
  const double half_road = config.lanes_per_approach * w;

  // Right-hand traffic; each approach runs straight through the box.
  for (int a = 0; a < kNumApproaches; ++a) {
    for (int k = 0; k < config.lanes_per_approach; ++k) {
      Lane lane;
      lane.id = static_cast<int>(road.lanes.size());
      lane.approach = static_cast<Approach>(a);
      lane.index = k;
      lane.length = 2.0 * len;
      lane.stop_station = len - half_road - kStopLineSetback;
      const double offset = (k + 0.5) * w;
      switch (lane.approach) {
        case Approach::kEastbound:
          lane.origin = {-len, -offset};
          lane.heading = 0.0;
          break;
        case Approach::kWestbound:
          lane.origin = {len, offset};
          lane.heading = kPi;
          break;
        case Approach::kNorthbound:
          lane.origin = {offset, -len};
          lane.heading = 0.5 * kPi;
          break;
        case Approach::kSouthbound:
          lane.origin = {-offset, len};
          lane.heading = -0.5 * kPi;
          break;
      }
      road.lanes.push_back(lane);
    }
  }
  // One crosswalk per leg, across the leg the named approach arrives on.
  const double d = half_road + kCrosswalkSetback;
  const double span = 2.0 * (half_road + kCrosswalkOverhang);
  const double edge = half_road + kCrosswalkOverhang;
  for (int a = 0; a < kNumApproaches; ++a) {
    Lane walk;
    walk.id = static_cast<int>(road.lanes.size());
    walk.crosswalk = true;
    walk.approach = static_cast<Approach>(a);
    walk.length = span;
    switch (walk.approach) {
      case Approach::kEastbound:  // west leg
        walk.origin = {-d, -edge};
        walk.heading = 0.5 * kPi;
        break;
      case Approach::kWestbound:  // east leg
        walk.origin = {d, edge};
        walk.heading = -0.5 * kPi;
        break;
      case Approach::kNorthbound:  // south leg
        walk.origin = {edge, -d};
        walk.heading = kPi;
        break;
      case Approach::kSouthbound:  // north leg
        walk.origin = {-edge, d};
        walk.heading = 0.0;
        break;
    }
    road.lanes.push_back(walk);
  }
  return road;
}

std::optional<int> Scenario::AgentIdForName(const std::string& name) const {
  const auto it = named_ids_.find(name);
  if (it == named_ids_.end()) return std::nullopt;
  return it->second;
}

absl::StatusOr<Scenario> Scenario::Create(ScenarioConfig config) {
  CMM_RETURN_IF_ERROR(config.Validate());
  Scenario scenario;
  scenario.config_ = std::move(config);
  const ScenarioConfig& cfg = scenario.config_;
  scenario.road_ = BuildRoadLayout(cfg);
  const RoadLayout& road = scenario.road_;

  WorldState& state = scenario.initial_state_;
  state.tick = 0;
  state.dt = cfg.dt;
  int next_id = 1;

  auto place = [&](AgentState agent) -> absl::Status {
    const Lane& lane = road.lanes[agent.lane_id];
    if (agent.station < 0.0 || agent.station > lane.length) {
      return absl::InvalidArgumentError(absl::StrCat(
          "agent ", agent.id, " spawns outside its lane (station ",
          agent.station, ")"));
    }
    const Vec2 p = lane.PointAt(agent.station);
    agent.pose = {p.x, p.y, NormalizeYaw(lane.heading)};
    state.agents.push_back(agent);
    return absl::OkStatus();
  };

  for (const AgentSpec& spec : cfg.agents) {
    AgentState agent;
    agent.id = next_id++;
    agent.cls = spec.cls;
    agent.control = spec.control;
    agent.dims = spec.dims.value_or(DefaultDimensions(spec.cls));
    agent.speed = spec.speed;
    agent.station = spec.station;
    if (spec.cls == AgentClass::kPedestrian) {
      agent.lane_id = CrosswalkLaneId(cfg.lanes_per_approach, spec.approach);
      if (agent.control != ControlMode::kWalker) agent.control = ControlMode::kWalker;
    } else {
      agent.lane_id = road.FindVehicleLane(spec.approach, spec.lane_index)->id;
    }
    if (spec.control == ControlMode::kScripted) {
      agent.speed = spec.profile.SpeedAt(0.0);
      scenario.profiles_[agent.id] = spec.profile;
    }
    CMM_RETURN_IF_ERROR(place(agent));
    if (!spec.name.empty()) scenario.named_ids_[spec.name] = agent.id;
  }

  // Background demand: queue vehicles upstream of each stop line, behind any
  // explicitly placed vehicle on the same lane.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> next_front(road.lanes.size());
  for (const Lane& lane : road.lanes) {
    next_front[lane.id] = lane.stop_station - kStopLineSetback;
  }
  for (const AgentState& a : state.agents) {
    if (a.cls == AgentClass::kPedestrian) continue;
    next_front[a.lane_id] =
        std::min(next_front[a.lane_id],
                 a.station - 0.5 * a.dims.length - cfg.demand.min_spacing);
  }
  constexpr Approach kOrder[] = {Approach::kEastbound, Approach::kNorthbound,
                                 Approach::kWestbound, Approach::kSouthbound};
  for (int i = 0; i < cfg.demand.vehicles; ++i) {
    const Approach approach = kOrder[i % kNumApproaches];
    const int index = (i / kNumApproaches) % cfg.lanes_per_approach;
    const Lane& lane = *road.FindVehicleLane(approach, index);
    AgentState agent;
    agent.id = next_id++;
    agent.cls = unit(rng) < cfg.demand.truck_fraction ? AgentClass::kTruck
                                                      : AgentClass::kCar;
    agent.control = ControlMode::kIdm;
    agent.dims = DefaultDimensions(agent.cls);
    agent.speed = cfg.demand.initial_speed;
    agent.lane_id = lane.id;
    const double jitter = 2.0 * unit(rng);
    const double front = next_front[lane.id] - jitter;
    agent.station = front - 0.5 * agent.dims.length;
    if (agent.station - 0.5 * agent.dims.length < 0.0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "demand of ", cfg.demand.vehicles,
          " vehicles exceeds approach capacity; lengthen approaches"));
    }
    next_front[lane.id] = front - agent.dims.length - cfg.demand.min_spacing;
    CMM_RETURN_IF_ERROR(place(agent));
  }
  for (int j = 0; j < cfg.demand.pedestrians; ++j) {
    const auto leg = static_cast<Approach>(j % kNumApproaches);
    AgentState agent;
    agent.id = next_id++;
    agent.cls = AgentClass::kPedestrian;
    agent.control = ControlMode::kWalker;
    agent.dims = DefaultDimensions(AgentClass::kPedestrian);
    agent.speed = cfg.demand.pedestrian_speed;
    agent.lane_id = CrosswalkLaneId(cfg.lanes_per_approach, leg);
    agent.station = 0.5 + 2.0 * (j / kNumApproaches);
    CMM_RETURN_IF_ERROR(place(agent));
  }

  // Spawn points must not overlap along a lane.
  for (size_t i = 0; i < state.agents.size(); ++i) {
    for (size_t j = i + 1; j < state.agents.size(); ++j) {
      const AgentState& a = state.agents[i];
      const AgentState& b = state.agents[j];
      if (a.lane_id != b.lane_id) continue;
      if (std::abs(a.station - b.station) <
          0.5 * (a.dims.length + b.dims.length)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "overlapping spawn points: agents ", a.id, " and ", b.id));
      }
    }
  }
  std::sort(state.agents.begin(), state.agents.end(),
            [](const AgentState& a, const AgentState& b) { return a.id < b.id; });
  for (int a = 0; a < kNumApproaches; ++a) {
    state.signal_phase[a] = cfg.signals.PhaseAt(static_cast<Approach>(a), 0.0);
  }
  return scenario;
}

Scenario::Leader Scenario::FindLeader(const WorldState& state,
                                      const AgentState& agent) const {
  Leader leader{std::numeric_limits<double>::infinity(), 0.0, false};
  for (const AgentState& other : state.agents) {
    if (other.id == agent.id || other.lane_id != agent.lane_id ||
        !IsVehicle(other)) {
      continue;
    }
    const bool ahead = other.station > agent.station ||
                       (other.station == agent.station && other.id > agent.id);
    if (!ahead) continue;
    const double gap = other.station - agent.station -
                       0.5 * (other.dims.length + agent.dims.length);
    if (gap < leader.gap) leader = {gap, other.speed, false};
  }

  const Lane& lane = road_.lanes[agent.lane_id];
  const SignalPhase phase =
      state.signal_phase[static_cast<int>(lane.approach)];
  if (phase != SignalPhase::kGreen) {
    const double to_stop =
        lane.stop_station - (agent.station + 0.5 * agent.dims.length);
    const double braking_distance =
        agent.speed * agent.speed / (2.0 * config_.idm.comfortable_decel);
    const bool must_stop =
        phase == SignalPhase::kRed || to_stop > braking_distance;
    if (to_stop > 0.0 && must_stop && to_stop < leader.gap) {
      leader = {to_stop, 0.0, true};
    }
  }
  return leader;
}

WorldState Scenario::Step(const WorldState& state,
                          const AccelCommands& commands) const {
  const double dt = config_.dt;
  const double t = state.sim_time();
  WorldState next;
  next.tick = state.tick + 1;
  next.dt = dt;
  next.collision_events = state.collision_events;
  next.agents.reserve(state.agents.size());

  bool collided = false;
  for (const AgentState& agent : state.agents) {
    AgentState updated = agent;
    double accel = 0.0;
    std::optional<double> scripted_speed;
    if (IsVehicle(agent)) {
      const Leader leader = FindLeader(state, agent);
      if (!leader.stop_line && leader.gap <= 0.0) collided = true;
      switch (agent.control) {
        case ControlMode::kScripted:
          scripted_speed = profiles_.at(agent.id).SpeedAt(t + dt);
          accel = (*scripted_speed - agent.speed) / dt;
          break;
        case ControlMode::kExternal:
          if (const auto it = commands.find(agent.id); it != commands.end()) {
            accel = it->second;
            break;
          }
          [[fallthrough]];
        case ControlMode::kIdm:
        case ControlMode::kWalker:
          accel = IdmAcceleration(agent.speed, leader.speed, leader.gap,
                                  config_.idm)
                      .accel;
          break;
      }
    }

    updated.station = agent.station + agent.speed * dt;
    updated.speed = scripted_speed.value_or(std::max(0.0, agent.speed + accel * dt));
    updated.accel = IsVehicle(agent) ? (updated.speed - agent.speed) / dt : 0.0;

    const Lane& lane = road_.lanes[agent.lane_id];
    if (updated.station - 0.5 * agent.dims.length > lane.length) {
      next.despawned.push_back(agent.id);
      continue;
    }
    const Vec2 p = lane.PointAt(updated.station);
    updated.pose = {p.x, p.y, NormalizeYaw(lane.heading)};
    next.agents.push_back(updated);
  }
  if (collided) ++next.collision_events;
  for (int a = 0; a < kNumApproaches; ++a) {
    next.signal_phase[a] =
        config_.signals.PhaseAt(static_cast<Approach>(a), next.sim_time());
  }
  return next;
}

absl::StatusOr<WorldState> InitScenario(const ScenarioConfig& config) {
  CMM_ASSIGN_OR_RETURN(Scenario scenario, Scenario::Create(config));
  return scenario.initial_state();
}

std::vector<LabeledBox> GroundTruthObjects(const WorldState& state,
                                           const SensorMount& sensor,
                                           const Geofence& region) {
  const Pose2D frame{sensor.x, sensor.y, sensor.yaw};
  std::vector<LabeledBox> labels;
  for (const AgentState& agent : state.agents) {
    const Vec2 local = ToLocal(frame, agent.pose.position());
    const double z = 0.5 * agent.dims.height - sensor.height;
    if (!region.Contains(local.x, local.y, z)) continue;
    LabeledBox box;
    box.agent_id = agent.id;
    box.cls = agent.cls;
    box.x = local.x;
    box.y = local.y;
    box.z = z;
    box.length = agent.dims.length;
    box.width = agent.dims.width;
    box.height = agent.dims.height;
    box.yaw = NormalizeYaw(agent.pose.yaw - sensor.yaw);
    labels.push_back(box);
  }
  return labels;
}

void WriteGroundTruthCsvHeader(std::ostream& out) {
  out << "tick,id,class,x,y,yaw,v,a\n";
}

void AppendGroundTruthCsv(const WorldState& state, std::ostream& out) {
  for (const AgentState& a : state.agents) {
    out << state.tick << ',' << a.id << ',' << AgentClassName(a.cls) << ','
        << FormatDouble(a.pose.x) << ',' << FormatDouble(a.pose.y) << ','
        << FormatDouble(a.pose.yaw) << ',' << FormatDouble(a.speed) << ','
        << FormatDouble(a.accel) << '\n';
  }
}

}  // namespace cmm
