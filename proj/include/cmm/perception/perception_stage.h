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

#ifndef CMM_PERCEPTION_PERCEPTION_STAGE_H_
#define CMM_PERCEPTION_PERCEPTION_STAGE_H_

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/common/geofence.h"
#include "cmm/lidar/lidar_config.h"
#include "cmm/lidar/point_cloud.h"
#include "cmm/perception/detection.h"
#include "cmm/perception/detector.h"
#include "cmm/scenario/scenario.h"

namespace cmm {

struct PerceptionOutput {
  std::vector<LabeledBox> truth;           // geofenced ground truth
  std::optional<PointCloudFrame> cloud;    // geofenced; absent for ideal
  std::vector<Detection> detections;
};

// Roadside perception for one sensor: scan, degrade, geofence, detect. Owns
// the LiDAR noise generator, so consecutive calls consume it in tick order.
class PerceptionStage {
 public:
  // `params.ground_z` is overridden by the mount height.
  static absl::StatusOr<PerceptionStage> Create(const LidarConfig& lidar,
                                                const Geofence& region,
                                                const std::string& detector,
                                                DetectorParams params,
                                                uint64_t seed);

  PerceptionOutput Run(const WorldState& state);

  const LidarConfig& lidar() const { return lidar_; }
  const Geofence& region() const { return region_; }
  const Detector& detector() const { return *detector_; }

 private:
  PerceptionStage(LidarConfig lidar, Geofence region,
                  std::unique_ptr<Detector> detector, uint64_t seed)
      : lidar_(std::move(lidar)),
        region_(region),
        detector_(std::move(detector)),
        rng_(seed) {}

  LidarConfig lidar_;
  Geofence region_;
  std::unique_ptr<Detector> detector_;
  std::mt19937_64 rng_;
};

}  // namespace cmm

#endif  // CMM_PERCEPTION_PERCEPTION_STAGE_H_
