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

#ifndef CMM_SCENARIO_IDM_H_
#define CMM_SCENARIO_IDM_H_

#include "absl/status/status.h"

namespace cmm {

// Intelligent Driver Model parameters (Treiber formulation).
struct IdmParams {
  double desired_speed = 15.0;      // v0 [m/s]
  double time_headway = 1.5;        // T [s]
  double max_accel = 2.0;           // a [m/s^2]
  double comfortable_decel = 2.0;   // b [m/s^2]
  double min_gap = 2.0;             // s0 [m]
  double exponent = 4.0;            // delta
  double emergency_decel = 8.0;     // lower clamp magnitude [m/s^2]

  absl::Status Validate() const;
  friend bool operator==(const IdmParams&, const IdmParams&) = default;
};

struct IdmCommand {
  double accel = 0.0;
  // Set when the gap is non-positive; `accel` is then the emergency clamp.
  bool collision_imminent = false;
};

// Desired dynamic gap s*(v, dv) = s0 + max(0, v*T + v*(v - v_lead)/(2*sqrt(ab))).
double IdmDesiredGap(double speed, double lead_speed, const IdmParams& params);

// IDM acceleration, clamped to [-emergency_decel, max_accel]. `gap` is the
// bumper-to-bumper distance and may be +infinity for a free road.
IdmCommand IdmAcceleration(double speed, double lead_speed, double gap,
                           const IdmParams& params);

}  // namespace cmm

#endif  // CMM_SCENARIO_IDM_H_
