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

#ifndef CMM_PERCEPTION_ORIENTED_IOU_H_
#define CMM_PERCEPTION_ORIENTED_IOU_H_

#include <vector>

#include "absl/status/statusor.h"
#include "cmm/common/geometry.h"

namespace cmm {

// Signed area of a simple polygon (positive when counter-clockwise).
double PolygonArea(const std::vector<Vec2>& polygon);

// Sutherland-Hodgman: `subject` clipped by the convex counter-clockwise
// polygon `clip`.
std::vector<Vec2> ClipConvexPolygon(const std::vector<Vec2>& subject,
                                    const std::vector<Vec2>& clip);

// Intersection-over-union of two rotated rectangles. Fails for boxes with
// non-positive or non-finite extent.
absl::StatusOr<double> OrientedIou(const OrientedBox& a, const OrientedBox& b);

}  // namespace cmm

#endif  // CMM_PERCEPTION_ORIENTED_IOU_H_
