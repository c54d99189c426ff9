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

#include "cmm/common/geofence.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "cmm/common/status_macros.h"

namespace cmm {
namespace {

absl::Status CheckInterval(const Interval& i, const char* axis) {
  if (!std::isfinite(i.min) || !std::isfinite(i.max) || !(i.min < i.max)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "geofence ", axis, " interval must satisfy min < max, got [", i.min,
        ", ", i.max, "]"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status Geofence::Validate() const {
  if (auto s = CheckInterval(x, "x"); !s.ok()) return s;
  if (auto s = CheckInterval(y, "y"); !s.ok()) return s;
  return CheckInterval(z, "z");
}

absl::StatusOr<Geofence> ParseGeofence(const ConfigFile& file,
                                       Geofence defaults) {
  Geofence g = defaults;
  CMM_ASSIGN_OR_RETURN(g.x.min, file.GetDouble("geofence.x_min", g.x.min));
  CMM_ASSIGN_OR_RETURN(g.x.max, file.GetDouble("geofence.x_max", g.x.max));
  CMM_ASSIGN_OR_RETURN(g.y.min, file.GetDouble("geofence.y_min", g.y.min));
  CMM_ASSIGN_OR_RETURN(g.y.max, file.GetDouble("geofence.y_max", g.y.max));
  CMM_ASSIGN_OR_RETURN(g.z.min, file.GetDouble("geofence.z_min", g.z.min));
  CMM_ASSIGN_OR_RETURN(g.z.max, file.GetDouble("geofence.z_max", g.z.max));
  CMM_RETURN_IF_ERROR(g.Validate());
  return g;
}

}  // namespace cmm
