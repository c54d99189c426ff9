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

#include "cmm/perception/perception_stage.h"

#include "cmm/common/status_macros.h"
#include "cmm/lidar/lidar_model.h"
#include "cmm/perception/geofence_filter.h"

namespace cmm {

absl::StatusOr<PerceptionStage> PerceptionStage::Create(
    const LidarConfig& lidar, const Geofence& region,
    const std::string& detector, DetectorParams params, uint64_t seed) {
  CMM_RETURN_IF_ERROR(lidar.Validate());
  CMM_RETURN_IF_ERROR(region.Validate());
  params.ground_z = -lidar.mount.height;
  CMM_ASSIGN_OR_RETURN(std::unique_ptr<Detector> d, MakeDetector(detector, params));
  return PerceptionStage(lidar, region, std::move(d), seed);
}

PerceptionOutput PerceptionStage::Run(const WorldState& state) {
  PerceptionOutput out;
  out.truth = GroundTruthObjects(state, lidar_.mount, region_);
  DetectionInput input;
  input.ground_truth = out.truth;
  if (detector_->needs_point_cloud()) {
    out.cloud = ApplyGeofence(Scan(state, lidar_, rng_), region_);
    input.cloud = &*out.cloud;
  }
  out.detections = detector_->Detect(input);
  return out;
}

}  // namespace cmm
