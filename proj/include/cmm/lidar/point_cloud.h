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

#ifndef CMM_LIDAR_POINT_CLOUD_H_
#define CMM_LIDAR_POINT_CLOUD_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/common/geofence.h"

namespace cmm {

// One return in the sensor frame. Intensity is in [0, 1].
struct LidarPoint {
  float x = 0.0f;
  float y = 0.0f;
  float z = 0.0f;
  float intensity = 0.0f;

  friend bool operator==(const LidarPoint&, const LidarPoint&) = default;
};

struct PointCloudFrame {
  int64_t tick = 0;
  SensorMount sensor;
  std::vector<LidarPoint> points;

  friend bool operator==(const PointCloudFrame&, const PointCloudFrame&) = default;
};

// KITTI velodyne layout: little-endian float32 (x, y, z, i) per point.
absl::Status WriteVelodyneBin(const std::string& path,
                              const std::vector<LidarPoint>& points);
absl::StatusOr<std::vector<LidarPoint>> ReadVelodyneBin(const std::string& path);

}  // namespace cmm

#endif  // CMM_LIDAR_POINT_CLOUD_H_
