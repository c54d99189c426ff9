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

#ifndef CMM_PERCEPTION_DETECTION_H_
#define CMM_PERCEPTION_DETECTION_H_

#include "cmm/common/geometry.h"
#include "cmm/scenario/types.h"

namespace cmm {

// A detected object in the sensor frame.
struct Detection {
  AgentClass cls = AgentClass::kCar;
  OrientedBox box;
  double confidence = 0.0;  // [0, 1]
  // Vertical extent, when the detector measures it.
  double z = 0.0;
  double height = 0.0;

  friend bool operator==(const Detection&, const Detection&) = default;
};

}  // namespace cmm

#endif  // CMM_PERCEPTION_DETECTION_H_
