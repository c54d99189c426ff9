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

#include "cmm/scenario/idm.h"

#include <algorithm>
#include <cmath>

namespace cmm {

absl::Status IdmParams::Validate() const {
  if (!(desired_speed > 0 && time_headway > 0 && max_accel > 0 &&
        comfortable_decel > 0 && min_gap > 0 && exponent > 0 &&
        emergency_decel > 0)) {
    return absl::InvalidArgumentError("IDM parameters must be positive");
  }
  return absl::OkStatus();
}

double IdmDesiredGap(double speed, double lead_speed,
                     const IdmParams& params) {
  const double dynamic =
      speed * params.time_headway +
      speed * (speed - lead_speed) /
          (2.0 * std::sqrt(params.max_accel * params.comfortable_decel));
  return params.min_gap + std::max(0.0, dynamic);
}

IdmCommand IdmAcceleration(double speed, double lead_speed, double gap,
                           const IdmParams& params) {
  if (!(gap > 0.0)) return {-params.emergency_decel, true};

  const double free_road =
      std::pow(std::max(0.0, speed) / params.desired_speed, params.exponent);
  double interaction = 0.0;
  if (std::isfinite(gap)) {
    const double ratio = IdmDesiredGap(speed, lead_speed, params) / gap;
    interaction = ratio * ratio;
  }
  const double accel = params.max_accel * (1.0 - free_road - interaction);
  return {std::clamp(accel, -params.emergency_decel, params.max_accel), false};
}

}  // namespace cmm
