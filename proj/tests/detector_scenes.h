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

#ifndef CMM_TESTS_DETECTOR_SCENES_H_
#define CMM_TESTS_DETECTOR_SCENES_H_

#include <string>
#include <vector>

#include "cmm/lidar/lidar_config.h"
#include "cmm/scenario/types.h"

namespace cmm::testing {

// Hand-placed scene seen by a sensor at the world origin. Vehicles are
// spread out so that no object shadows another.
struct DetectorScene {
  std::string name;
  WorldState state;
};

// Five scenes with one to four vehicles each.
std::vector<DetectorScene> NoiseFreeScenes();

// Default LiDAR with range noise and every dropoff mechanism disabled.
LidarConfig NoiseFreeLidar();

}  // namespace cmm::testing

#endif  // CMM_TESTS_DETECTOR_SCENES_H_
