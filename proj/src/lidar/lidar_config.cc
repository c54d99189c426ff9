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

#include "cmm/lidar/lidar_config.h"

#include <cmath>
#include <numbers>

#include "cmm/common/status_macros.h"

namespace cmm {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool IsProbability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

absl::Status LidarConfig::Validate() const {
  if (channels < 1) return absl::InvalidArgumentError("channels must be >= 1");
  if (!(range_max > 0.0)) {
    return absl::InvalidArgumentError("range_max must be positive");
  }
  if (!(lower_fov_deg < upper_fov_deg)) {
    return absl::InvalidArgumentError("lower_fov must be below upper_fov");
  }
  if (!(azimuth_step_deg > 0.0) || azimuth_step_deg > 360.0) {
    return absl::InvalidArgumentError("azimuth_step must be in (0, 360]");
  }
  if (!(attenuation >= 0.0) || !(noise_stddev >= 0.0) ||
      !(dropoff_intensity_limit >= 0.0)) {
    return absl::InvalidArgumentError(
        "attenuation, noise and intensity limit must be non-negative");
  }
  if (!IsProbability(dropoff_rate) || !IsProbability(dropoff_zero_intensity)) {
    return absl::InvalidArgumentError("dropoff rates must lie in [0, 1]");
  }
  if (!(mount.height > 0.0)) {
    return absl::InvalidArgumentError("mount height must be positive");
  }
  return absl::OkStatus();
}

int LidarConfig::columns() const {
  return static_cast<int>(std::lround(360.0 / azimuth_step_deg));
}

double LidarConfig::ChannelPitch(int channel) const {
  if (channels == 1) return lower_fov_deg * kDegToRad;
  const double step = (upper_fov_deg - lower_fov_deg) / (channels - 1);
  return (lower_fov_deg + step * channel) * kDegToRad;
}

double LidarConfig::ColumnAzimuth(int column) const {
  return column * azimuth_step_deg * kDegToRad;
}

absl::StatusOr<LidarConfig> ParseLidarConfig(const ConfigFile& file) {
  LidarConfig c;
  CMM_ASSIGN_OR_RETURN(const int64_t channels, file.GetInt("lidar.channels", c.channels));
  c.channels = static_cast<int>(channels);
  CMM_ASSIGN_OR_RETURN(c.range_max, file.GetDouble("lidar.range", c.range_max));
  CMM_ASSIGN_OR_RETURN(c.rotation_hz,
                       file.GetDouble("lidar.rotation_frequency", c.rotation_hz));
  CMM_ASSIGN_OR_RETURN(c.upper_fov_deg, file.GetDouble("lidar.upper_fov", c.upper_fov_deg));
  CMM_ASSIGN_OR_RETURN(c.lower_fov_deg, file.GetDouble("lidar.lower_fov", c.lower_fov_deg));
  CMM_ASSIGN_OR_RETURN(c.attenuation,
                       file.GetDouble("lidar.atmosphere_attenuation_rate", c.attenuation));
  CMM_ASSIGN_OR_RETURN(c.noise_stddev, file.GetDouble("lidar.noise_stddev", c.noise_stddev));
  CMM_ASSIGN_OR_RETURN(c.dropoff_rate,
                       file.GetDouble("lidar.dropoff_general_rate", c.dropoff_rate));
  CMM_ASSIGN_OR_RETURN(c.dropoff_intensity_limit,
                       file.GetDouble("lidar.dropoff_intensity_limit",
                                      c.dropoff_intensity_limit));
  CMM_ASSIGN_OR_RETURN(c.dropoff_zero_intensity,
                       file.GetDouble("lidar.dropoff_zero_intensity",
                                      c.dropoff_zero_intensity));
  CMM_ASSIGN_OR_RETURN(c.azimuth_step_deg,
                       file.GetDouble("lidar.azimuth_step", c.azimuth_step_deg));
  CMM_ASSIGN_OR_RETURN(c.mount.x, file.GetDouble("lidar.x", c.mount.x));
  CMM_ASSIGN_OR_RETURN(c.mount.y, file.GetDouble("lidar.y", c.mount.y));
  CMM_ASSIGN_OR_RETURN(const double yaw_deg, file.GetDouble("lidar.yaw_deg", 0.0));
  c.mount.yaw = yaw_deg * kDegToRad;
  CMM_ASSIGN_OR_RETURN(c.mount.height, file.GetDouble("lidar.height", c.mount.height));
  CMM_RETURN_IF_ERROR(c.Validate());
  return c;
}

}  // namespace cmm
