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

#ifndef CMM_PERCEPTION_GEOFENCE_FILTER_H_
#define CMM_PERCEPTION_GEOFENCE_FILTER_H_

#include "cmm/common/geofence.h"
#include "cmm/lidar/point_cloud.h"

namespace cmm {

// Keeps the points inside the closed box `region`, preserving order.
PointCloudFrame ApplyGeofence(const PointCloudFrame& frame,
                              const Geofence& region);

}  // namespace cmm

#endif  // CMM_PERCEPTION_GEOFENCE_FILTER_H_
