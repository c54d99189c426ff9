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

#include "cmm/cacc/leader_estimator.h"

#include <algorithm>
#include <limits>
#include <string>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "cmm/common/geometry.h"

namespace cmm {

std::string_view PerceptionSchemeName(PerceptionScheme scheme) {
  switch (scheme) {
    case PerceptionScheme::kIdeal:
      return "IP";
    case PerceptionScheme::kAuthentic:
      return "AP";
    case PerceptionScheme::kAuthenticSafe:
      return "APS";
  }
  return "?";
}

absl::StatusOr<PerceptionScheme> ParsePerceptionScheme(std::string_view name) {
  const std::string upper = absl::AsciiStrToUpper(std::string(name));
  if (upper == "IP") return PerceptionScheme::kIdeal;
  if (upper == "AP") return PerceptionScheme::kAuthentic;
  if (upper == "APS" || upper == "AP-S") return PerceptionScheme::kAuthenticSafe;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown perception scheme '", std::string(name), "'"));
}

std::string_view LeaderStatusName(LeaderStatus status) {
  switch (status) {
    case LeaderStatus::kPresent:
      return "present";
    case LeaderStatus::kAbsent:
      return "absent";
    case LeaderStatus::kHeld:
      return "held";
  }
  return "?";
}

LeaderEstimate EstimateLeaderFromTruth(const WorldState& state,
                                       const AgentState& follower) {
  LeaderEstimate best;
  double best_station = std::numeric_limits<double>::infinity();
  for (const AgentState& other : state.agents) {
    if (other.id == follower.id || other.lane_id != follower.lane_id ||
        other.cls == AgentClass::kPedestrian || other.station <= follower.station) {
      continue;
    }
    if (other.station < best_station) {
      best_station = other.station;
      best.status = LeaderStatus::kPresent;
      best.position = other.station + 0.5 * other.dims.length;
      best.speed = other.speed;
      best.length = other.dims.length;
      best.last_update_ms = state.sim_time() * 1000.0;
    }
  }
  return best;
}

LeaderEstimate EstimateLeaderFromMirror(PerceptionScheme scheme,
                                        const MirrorSnapshot& snapshot,
                                        const SensorMount& sensor,
                                        const Lane& lane,
                                        const AgentState& follower,
                                        const LeaderEstimate& previous,
                                        const EstimatorParams& params,
                                        double now_ms) {
  const bool fresh =
      snapshot.frame_id.has_value() &&
      (!previous.frame_id.has_value() || *snapshot.frame_id > *previous.frame_id);

  if (fresh) {
    const Pose2D sensor_pose{sensor.x, sensor.y, sensor.yaw};
    const double follower_front = follower.station + 0.5 * follower.dims.length;
    const MirroredObject* nearest = nullptr;
    double nearest_station = std::numeric_limits<double>::infinity();
    for (const MirroredObject& o : snapshot.objects) {
      const Vec2 world = ToWorld(sensor_pose, {o.x, o.y});
      if (std::abs(lane.LateralOffsetOf(world)) > params.lane_gate) continue;
      const double station = lane.StationOf(world);
      if (station <= follower_front || station >= nearest_station) continue;
      nearest = &o;
      nearest_station = station;
    }
    if (nearest != nullptr) {
      LeaderEstimate present;
      present.status = LeaderStatus::kPresent;
      present.length = nearest->length;
      present.position = nearest_station + 0.5 * nearest->length;
      present.last_update_ms = static_cast<double>(snapshot.sim_time_ms);
      present.frame_id = snapshot.frame_id;
      if (previous.status == LeaderStatus::kPresent ||
          previous.status == LeaderStatus::kHeld) {
        const double dt_s = (present.last_update_ms - previous.last_update_ms) / 1000.0;
        if (dt_s > 0.0) {
          present.speed = std::max(0.0, (present.position - previous.position) / dt_s);
        }
      }
      return present;
    }
  }

  // Miss: either no newer frame or no candidate in the newest one.
  LeaderEstimate miss;
  miss.frame_id = fresh ? snapshot.frame_id : previous.frame_id;
  if (scheme == PerceptionScheme::kAuthenticSafe &&
      (previous.status == LeaderStatus::kPresent ||
       previous.status == LeaderStatus::kHeld)) {
    if (now_ms - previous.last_update_ms <= params.held_horizon_ms) {
      miss.status = LeaderStatus::kHeld;
      miss.position = previous.position;
      miss.length = previous.length;
      miss.speed = 0.0;
      miss.last_update_ms = previous.last_update_ms;
      return miss;
    }
    miss.expired = previous.status == LeaderStatus::kHeld;
  }
  return miss;
}

}  // namespace cmm
