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

#ifndef CMM_COMMON_GEOFENCE_H_
#define CMM_COMMON_GEOFENCE_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cmm/common/config_file.h"

namespace cmm {

// Closed interval [min, max].
struct Interval {
  double min = 0.0;
  double max = 0.0;

  bool Contains(double v) const { return v >= min && v <= max; }
  double span() const { return max - min; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Axis-aligned target region in the sensor frame. The defaults are the
// 50 m x 50 m detection area in front of the roadside LiDAR.
struct Geofence {
  Interval x{0.0, 50.0};
  Interval y{-25.0, 25.0};
  Interval z{-2.74, 1.36};

  bool Contains(double px, double py, double pz) const {
    return x.Contains(px) && y.Contains(py) && z.Contains(pz);
  }
  bool ContainsGround(double px, double py) const {
    return x.Contains(px) && y.Contains(py);
  }

  absl::Status Validate() const;
  friend bool operator==(const Geofence&, const Geofence&) = default;
};

// Where a sensor sits: planar pose plus mounting height above the road.
struct SensorMount {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  double height = 1.73;

  friend bool operator==(const SensorMount&, const SensorMount&) = default;
};

// Reads [geofence] x_min, x_max, y_min, y_max, z_min, z_max over `defaults`.
absl::StatusOr<Geofence> ParseGeofence(const ConfigFile& file,
                                       Geofence defaults = {});

}  // namespace cmm

#endif  // CMM_COMMON_GEOFENCE_H_
