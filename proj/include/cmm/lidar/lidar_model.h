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

#ifndef CMM_LIDAR_LIDAR_MODEL_H_
#define CMM_LIDAR_LIDAR_MODEL_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/lidar/lidar_config.h"
#include "cmm/lidar/point_cloud.h"
#include "cmm/scenario/types.h"

namespace cmm {

inline constexpr int kGroundTarget = -1;

// Noise-free intersection of one laser ray with the scene.
struct RawHit {
  int32_t ray = 0;          // channel * columns + column
  double distance = 0.0;    // m from the sensor origin
  int target = kGroundTarget;  // agent id, or kGroundTarget
  double dir_x = 0.0;       // unit ray direction, sensor frame
  double dir_y = 0.0;
  double dir_z = 0.0;
};

// Beer-Lambert attenuation with unit initial intensity: exp(-a * d).
absl::StatusOr<double> Intensity(double distance, double attenuation);

// Casts one full sweep against agent boxes (vehicles), vertical cylinders
// (pedestrians) and the road plane. Hits are ordered by ray index; rays with
// no surface within range produce nothing.
std::vector<RawHit> CastRays(const WorldState& state, const LidarConfig& config);

// Applies range noise, intensity and random dropoff. Draws a fixed number of
// variates per ray slot, so the fate of one ray does not depend on what the
// other rays hit.
PointCloudFrame Degrade(std::span<const RawHit> hits, const LidarConfig& config,
                        std::mt19937_64& rng);

// CastRays followed by Degrade, stamped with the state's tick.
PointCloudFrame Scan(const WorldState& state, const LidarConfig& config,
                     std::mt19937_64& rng);

}  // namespace cmm

#endif  // CMM_LIDAR_LIDAR_MODEL_H_
