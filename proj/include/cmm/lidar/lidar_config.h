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

#ifndef CMM_LIDAR_LIDAR_CONFIG_H_
#define CMM_LIDAR_LIDAR_CONFIG_H_

#include "absl/status/statusor.h"
#include "cmm/common/config_file.h"
#include "cmm/common/geofence.h"

namespace cmm {

// Roadside spinning LiDAR. Defaults follow a KITTI-like 64-channel unit.
struct LidarConfig {
  int channels = 64;
  double range_max = 100.0;           // m
  double rotation_hz = 10.0;          // one sweep per simulation tick
  double upper_fov_deg = 2.0;
  double lower_fov_deg = -24.9;
  double attenuation = 0.004;         // 1/m
  double noise_stddev = 0.01;         // m, along the ray
  double dropoff_rate = 0.45;
  double dropoff_intensity_limit = 0.8;
  double dropoff_zero_intensity = 0.40;
  double azimuth_step_deg = 0.2;
  SensorMount mount;

  absl::Status Validate() const;

  int columns() const;
  int num_rays() const { return channels * columns(); }
  double ChannelPitch(int channel) const;   // radians
  double ColumnAzimuth(int column) const;   // radians, sensor frame

  friend bool operator==(const LidarConfig&, const LidarConfig&) = default;
};

// Reads the [lidar] section (mount pose: x, y, yaw_deg, height).
absl::StatusOr<LidarConfig> ParseLidarConfig(const ConfigFile& file);

}  // namespace cmm

#endif  // CMM_LIDAR_LIDAR_CONFIG_H_
