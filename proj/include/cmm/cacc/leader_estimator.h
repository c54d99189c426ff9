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

#ifndef CMM_CACC_LEADER_ESTIMATOR_H_
#define CMM_CACC_LEADER_ESTIMATOR_H_

#include <cstdint>
#include <optional>
#include <string_view>

#include "absl/status/statusor.h"
#include "cmm/common/geofence.h"
#include "cmm/mirror/mirror_registry.h"
#include "cmm/scenario/types.h"

namespace cmm {

// How the follower learns about its leader.
enum class PerceptionScheme {
  kIdeal,          // IP: ground truth
  kAuthentic,      // AP: a miss means no leader
  kAuthenticSafe,  // APS: a miss keeps the leader where it was last seen
};

std::string_view PerceptionSchemeName(PerceptionScheme scheme);
// Accepts IP, AP, APS and AP-S, case-insensitively.
absl::StatusOr<PerceptionScheme> ParsePerceptionScheme(std::string_view name);

enum class LeaderStatus { kPresent, kAbsent, kHeld };

std::string_view LeaderStatusName(LeaderStatus status);

// Leader as seen by the follower. Positions are stations of the front bumper
// along the follower's lane.
struct LeaderEstimate {
  LeaderStatus status = LeaderStatus::kAbsent;
  double position = 0.0;  // unset when Absent
  double speed = 0.0;
  double length = 0.0;
  double last_update_ms = 0.0;  // sensor time of the last Present sample
  // Id of the newest mirror frame consumed; a tick without a newer frame
  // counts as a miss.
  std::optional<uint64_t> frame_id;
  // True on the tick a Held estimate expired.
  bool expired = false;

  friend bool operator==(const LeaderEstimate&, const LeaderEstimate&) = default;
};

struct EstimatorParams {
  double lane_gate = 1.5;          // max lateral offset from the lane center
  double held_horizon_ms = 5000.0; // Held estimates expire after this
};

// Nearest vehicle ahead of `follower` on its lane, from ground truth.
LeaderEstimate EstimateLeaderFromTruth(const WorldState& state,
                                       const AgentState& follower);

// Leader candidates are mirrored objects whose center projects within
// `lane_gate` of the follower's lane and lies ahead of the follower's front
// bumper; the nearest one wins. Speed is the finite difference of consecutive
// Present positions over sensor time.
LeaderEstimate EstimateLeaderFromMirror(PerceptionScheme scheme,
                                        const MirrorSnapshot& snapshot,
                                        const SensorMount& sensor,
                                        const Lane& lane,
                                        const AgentState& follower,
                                        const LeaderEstimate& previous,
                                        const EstimatorParams& params,
                                        double now_ms);

}  // namespace cmm

#endif  // CMM_CACC_LEADER_ESTIMATOR_H_
