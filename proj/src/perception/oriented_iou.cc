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

#include "cmm/perception/oriented_iou.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace cmm {
namespace {

bool IsValidBox(const OrientedBox& box) {
  return std::isfinite(box.center_x) && std::isfinite(box.center_y) &&
         std::isfinite(box.yaw) && std::isfinite(box.length) &&
         std::isfinite(box.width) && box.length > 0.0 && box.width > 0.0;
}

std::vector<Vec2> CornerList(const OrientedBox& box) {
  const auto corners = box.Corners();
  return {corners.begin(), corners.end()};
}

}  // namespace

double PolygonArea(const std::vector<Vec2>& polygon) {
  double twice_area = 0.0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    twice_area += Cross(polygon[i], polygon[(i + 1) % polygon.size()]);
  }
  return 0.5 * twice_area;
}

std::vector<Vec2> ClipConvexPolygon(const std::vector<Vec2>& subject,
                                    const std::vector<Vec2>& clip) {
  std::vector<Vec2> output = subject;
  for (size_t e = 0; e < clip.size() && !output.empty(); ++e) {
    const Vec2 a = clip[e];
    const Vec2 edge = clip[(e + 1) % clip.size()] - a;
    const std::vector<Vec2> input = std::move(output);
    output.clear();
    for (size_t i = 0; i < input.size(); ++i) {
      const Vec2 cur = input[i];
      const Vec2 prev = input[(i + input.size() - 1) % input.size()];
      const double cur_side = Cross(edge, cur - a);
      const double prev_side = Cross(edge, prev - a);
      if (cur_side >= 0.0) {
        if (prev_side < 0.0) {
          const double t = prev_side / (prev_side - cur_side);
          output.push_back(prev + t * (cur - prev));
        }
        output.push_back(cur);
      } else if (prev_side >= 0.0) {
        const double t = prev_side / (prev_side - cur_side);
        output.push_back(prev + t * (cur - prev));
      }
    }
  }
  return output;
}

absl::StatusOr<double> OrientedIou(const OrientedBox& a, const OrientedBox& b) {
  if (!IsValidBox(a) || !IsValidBox(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("degenerate box in IoU: ", a.length, "x", a.width, " vs ",
                     b.length, "x", b.width));
  }
  if (a == b) return 1.0;
  // Cheap rejection on bounding circles.
  const double reach = 0.5 * (std::hypot(a.length, a.width) +
                              std::hypot(b.length, b.width));
  if (Norm(a.center() - b.center()) > reach) return 0.0;

  const std::vector<Vec2> overlap = ClipConvexPolygon(CornerList(a), CornerList(b));
  const double intersection =
      overlap.size() < 3 ? 0.0 : std::abs(PolygonArea(overlap));
  const double union_area = a.area() + b.area() - intersection;
  return std::clamp(intersection / union_area, 0.0, 1.0);
}

}  // namespace cmm
