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

#include "cmm/perception/geofence_filter.h"

namespace cmm {

PointCloudFrame ApplyGeofence(const PointCloudFrame& frame,
                              const Geofence& region) {
  PointCloudFrame out;
  out.tick = frame.tick;
  out.sensor = frame.sensor;
  out.points.reserve(frame.points.size());
  for (const LidarPoint& p : frame.points) {
    if (region.Contains(p.x, p.y, p.z)) out.points.push_back(p);
  }
  return out;
}

}  // namespace cmm
