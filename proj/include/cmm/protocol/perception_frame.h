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

#ifndef CMM_PROTOCOL_PERCEPTION_FRAME_H_
#define CMM_PROTOCOL_PERCEPTION_FRAME_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "cmm/perception/detection.h"
#include "cmm/scenario/types.h"

namespace cmm {

// One object of post-perception data, sensor frame.
struct PerceivedObject {
  AgentClass cls = AgentClass::kCar;
  double x = 0.0;
  double y = 0.0;
  double length = 0.0;
  double width = 0.0;
  double yaw = 0.0;
  double confidence = 0.0;

  friend bool operator==(const PerceivedObject&, const PerceivedObject&) = default;
};

// Message carried from the real-world side to the mirror.
struct PerceptionFrame {
  uint64_t frame_id = 0;    // strictly increasing per sender
  int64_t sim_time_ms = 0;  // sensor timestamp
  std::string sensor_id;
  std::vector<PerceivedObject> objects;

  absl::Status Validate() const;
  friend bool operator==(const PerceptionFrame&, const PerceptionFrame&) = default;
};

PerceptionFrame MakePerceptionFrame(uint64_t frame_id, int64_t sim_time_ms,
                                    std::string sensor_id,
                                    std::span<const Detection> detections);

// Fixed frame behind the wire-format fixture in tests/data.
PerceptionFrame GoldenFrame();

}  // namespace cmm

#endif  // CMM_PROTOCOL_PERCEPTION_FRAME_H_
