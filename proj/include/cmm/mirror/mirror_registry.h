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

#ifndef CMM_MIRROR_MIRROR_REGISTRY_H_
#define CMM_MIRROR_MIRROR_REGISTRY_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "cmm/common/geofence.h"
#include "cmm/protocol/perception_frame.h"
#include "cmm/scenario/types.h"

namespace cmm {

// Snapshot of one reconstructed object; sensor frame, no track identity.
struct MirroredObject {
  AgentClass cls = AgentClass::kCar;
  double x = 0.0;
  double y = 0.0;
  double length = 0.0;
  double width = 0.0;
  double yaw = 0.0;
  double confidence = 0.0;
  uint64_t frame_id = 0;
  double received_at_ms = 0.0;

  friend bool operator==(const MirroredObject&, const MirroredObject&) = default;
};

inline constexpr double kNeverFed = std::numeric_limits<double>::infinity();

struct MirrorSnapshot {
  std::optional<uint64_t> frame_id;
  int64_t sim_time_ms = 0;  // sensor timestamp of the accepted frame
  std::vector<MirroredObject> objects;
  double staleness_ms = kNeverFed;

  friend bool operator==(const MirrorSnapshot&, const MirrorSnapshot&) = default;
};

// Latest-frame-wins store of the mirrored scene. A frame replaces the whole
// contents when its id exceeds every id accepted so far; anything older is
// counted as stale and discarded.
class MirrorRegistry {
 public:
  // Returns true when the frame was accepted.
  bool Apply(const PerceptionFrame& frame, double now_ms);

  // Current contents, restricted to the planar extent of `region` if given.
  MirrorSnapshot Query(double now_ms, const Geofence* region = nullptr) const;

  std::optional<uint64_t> latest_frame_id() const { return latest_frame_id_; }
  int64_t accepted() const { return accepted_; }
  int64_t stale() const { return stale_; }

 private:
  std::optional<uint64_t> latest_frame_id_;
  int64_t latest_sim_time_ms_ = 0;
  double last_accept_ms_ = 0.0;
  std::vector<MirroredObject> objects_;
  int64_t accepted_ = 0;
  int64_t stale_ = 0;
};

// One JSON object per line:
// {"tick":N,"frame_id":N|null,"staleness_ms":x|null,"objects":[...]}
void WriteSnapshotJsonl(int64_t tick, const MirrorSnapshot& snapshot,
                        std::ostream& out);

}  // namespace cmm

#endif  // CMM_MIRROR_MIRROR_REGISTRY_H_
