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

#include "cmm/mirror/mirror_registry.h"

#include <cmath>
#include <string>

#include "nlohmann/json.hpp"

namespace cmm {

bool MirrorRegistry::Apply(const PerceptionFrame& frame, double now_ms) {
  if (latest_frame_id_.has_value() && frame.frame_id <= *latest_frame_id_) {
    ++stale_;
    return false;
  }
  latest_frame_id_ = frame.frame_id;
  latest_sim_time_ms_ = frame.sim_time_ms;
  last_accept_ms_ = now_ms;
  objects_.clear();
  objects_.reserve(frame.objects.size());
  for (const PerceivedObject& o : frame.objects) {
    objects_.push_back({o.cls, o.x, o.y, o.length, o.width, o.yaw,
                        o.confidence, frame.frame_id, now_ms});
  }
  ++accepted_;
  return true;
}

MirrorSnapshot MirrorRegistry::Query(double now_ms, const Geofence* region) const {
  MirrorSnapshot snapshot;
  snapshot.frame_id = latest_frame_id_;
  if (!latest_frame_id_.has_value()) return snapshot;
  snapshot.sim_time_ms = latest_sim_time_ms_;
  snapshot.staleness_ms = now_ms - last_accept_ms_;
  for (const MirroredObject& o : objects_) {
    if (region == nullptr || region->ContainsGround(o.x, o.y)) {
      snapshot.objects.push_back(o);
    }
  }
  return snapshot;
}

void WriteSnapshotJsonl(int64_t tick, const MirrorSnapshot& snapshot,
                        std::ostream& out) {
  nlohmann::ordered_json j;
  j["tick"] = tick;
  j["frame_id"] = snapshot.frame_id.has_value()
                      ? nlohmann::ordered_json(*snapshot.frame_id)
                      : nlohmann::ordered_json(nullptr);
  j["staleness_ms"] = std::isfinite(snapshot.staleness_ms)
                          ? nlohmann::ordered_json(snapshot.staleness_ms)
                          : nlohmann::ordered_json(nullptr);
  j["objects"] = nlohmann::ordered_json::array();
  for (const MirroredObject& o : snapshot.objects) {
    j["objects"].push_back({{"cls", std::string(AgentClassName(o.cls))},
                            {"x", o.x},
                            {"y", o.y},
                            {"l", o.length},
                            {"w", o.width},
                            {"yaw", o.yaw},
                            {"conf", o.confidence}});
  }
  out << j.dump() << '\n';
}

}  // namespace cmm
