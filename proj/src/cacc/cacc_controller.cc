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

#include "cmm/cacc/cacc_controller.h"

#include <limits>

namespace cmm {

double EstimatedGap(const AgentState& follower, const LeaderEstimate& estimate) {
  if (estimate.status == LeaderStatus::kAbsent) {
    return std::numeric_limits<double>::infinity();
  }
  const double follower_front = follower.station + 0.5 * follower.dims.length;
  return estimate.position - follower_front - estimate.length;
}

IdmCommand CaccStep(const AgentState& follower, const LeaderEstimate& estimate,
                    const IdmParams& params) {
  return IdmAcceleration(follower.speed, estimate.speed,
                         EstimatedGap(follower, estimate), params);
}

}  // namespace cmm
