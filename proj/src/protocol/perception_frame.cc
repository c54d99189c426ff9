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

#include "cmm/protocol/perception_frame.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace cmm {

absl::Status PerceptionFrame::Validate() const {
  if (sim_time_ms < 0) {
    return absl::InvalidArgumentError("sim_time_ms must be non-negative");
  }
  for (size_t i = 0; i < objects.size(); ++i) {
    const PerceivedObject& o = objects[i];
    if (!std::isfinite(o.x) || !std::isfinite(o.y) || !std::isfinite(o.yaw)) {
      return absl::InvalidArgumentError(
          absl::StrCat("object ", i, ": non-finite pose"));
    }
    if (!(o.length > 0.0) || !(o.width > 0.0) || !std::isfinite(o.length) ||
        !std::isfinite(o.width)) {
      return absl::InvalidArgumentError(
          absl::StrCat("object ", i, ": dimensions must be positive"));
    }
    if (!(o.confidence >= 0.0 && o.confidence <= 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("object ", i, ": confidence outside [0, 1]"));
    }
  }
  return absl::OkStatus();
}

PerceptionFrame MakePerceptionFrame(uint64_t frame_id, int64_t sim_time_ms,
                                    std::string sensor_id,
                                    std::span<const Detection> detections) {
  PerceptionFrame frame;
  frame.frame_id = frame_id;
  frame.sim_time_ms = sim_time_ms;
  frame.sensor_id = std::move(sensor_id);
  frame.objects.reserve(detections.size());
  for (const Detection& d : detections) {
    frame.objects.push_back({d.cls, d.box.center_x, d.box.center_y,
                             d.box.length, d.box.width, d.box.yaw,
                             d.confidence});
  }
  return frame;
}

PerceptionFrame GoldenFrame() {
  PerceptionFrame frame;
  frame.frame_id = 42;
  frame.sim_time_ms = 4100;
  frame.sensor_id = "rsu-0";
  frame.objects = {
      {AgentClass::kCar, 18.25, 8.5, 4.5, 1.8, 0.015625, 0.87},
      {AgentClass::kTruck, 11.0, 4.75, 8.0, 2.5, 3.140625, 1.0},
      {AgentClass::kPedestrian, 30.5, -12.125, 0.6, 0.6, 1.5, 0.25},
  };
  return frame;
}

}  // namespace cmm
