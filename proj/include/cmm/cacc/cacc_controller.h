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

#ifndef CMM_CACC_CACC_CONTROLLER_H_
#define CMM_CACC_CACC_CONTROLLER_H_

#include "cmm/cacc/leader_estimator.h"
#include "cmm/scenario/idm.h"
#include "cmm/scenario/types.h"

namespace cmm {

// Bumper-to-bumper gap implied by `estimate`; +inf when Absent.
double EstimatedGap(const AgentState& follower, const LeaderEstimate& estimate);

// IDM on the leader estimate. A non-positive gap yields the emergency
// deceleration with `collision_imminent` set.
IdmCommand CaccStep(const AgentState& follower, const LeaderEstimate& estimate,
                    const IdmParams& params);

}  // namespace cmm

#endif  // CMM_CACC_CACC_CONTROLLER_H_
