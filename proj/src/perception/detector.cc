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

#include "cmm/perception/detector.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_map>

#include "absl/strings/str_cat.h"

namespace cmm {
namespace {

constexpr double kPi = std::numbers::pi;

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

int64_t CellKey(int64_t ix, int64_t iy) { return (ix << 32) ^ (iy & 0xffffffff); }

}  // namespace

std::vector<Vec2> ConvexHull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  std::vector<Vec2> hull(2 * points.size());
  size_t k = 0;
  for (const Vec2& p : points) {
    while (k >= 2 && Cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    const Vec2& p = points[i];
    while (k >= lower && Cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

namespace {

// Rectangles flush with each hull edge, as (area, box) before canonicalizing.
std::vector<std::pair<double, OrientedBox>> CaliperRectangles(
    const std::vector<Vec2>& hull) {
  std::vector<double> angles;
  if (hull.size() <= 1) {
    angles.push_back(0.0);
  } else {
    for (size_t i = 0; i < hull.size(); ++i) {
      const Vec2 edge = hull[(i + 1) % hull.size()] - hull[i];
      angles.push_back(std::atan2(edge.y, edge.x));
    }
  }
  std::vector<std::pair<double, OrientedBox>> out;
  out.reserve(angles.size());
  for (double angle : angles) {
    const Vec2 u{std::cos(angle), std::sin(angle)};
    const Vec2 v{-u.y, u.x};
    double u_min = INFINITY, u_max = -INFINITY, v_min = INFINITY, v_max = -INFINITY;
    for (const Vec2& p : hull) {
      u_min = std::min(u_min, Dot(p, u));
      u_max = std::max(u_max, Dot(p, u));
      v_min = std::min(v_min, Dot(p, v));
      v_max = std::max(v_max, Dot(p, v));
    }
    const Vec2 c = 0.5 * (u_min + u_max) * u + 0.5 * (v_min + v_max) * v;
    out.push_back({(u_max - u_min) * (v_max - v_min),
                   {c.x, c.y, u_max - u_min, v_max - v_min, angle}});
  }
  return out;
}

// Long side as length, yaw in [0, pi), sides floored at `min_extent`.
OrientedBox Canonicalize(OrientedBox box, double min_extent) {
  if (box.width > box.length) {
    std::swap(box.length, box.width);
    box.yaw += 0.5 * kPi;
  }
  box.length = std::max(box.length, min_extent);
  box.width = std::max(box.width, min_extent);
  box.yaw = std::fmod(box.yaw, kPi);
  if (box.yaw < 0.0) box.yaw += kPi;
  if (box.yaw >= kPi) box.yaw = 0.0;
  return box;
}

double MeanBoundaryDistance(std::span<const Vec2> points, const OrientedBox& box) {
  const double hl = 0.5 * box.length, hw = 0.5 * box.width;
  double sum = 0.0;
  for (const Vec2& p : points) {
    const Vec2 local = ToLocal({box.center_x, box.center_y, box.yaw}, p);
    sum += std::min(hl - std::abs(local.x), hw - std::abs(local.y));
  }
  return points.empty() ? 0.0 : sum / static_cast<double>(points.size());
}

}  // namespace

OrientedBox MinAreaRectangle(std::span<const Vec2> points, double min_extent) {
  return FitFootprint(points, min_extent, 0.0);
}

OrientedBox FitFootprint(std::span<const Vec2> points, double min_extent,
                         double area_tolerance) {
  const std::vector<Vec2> hull = ConvexHull({points.begin(), points.end()});
  if (hull.empty()) return Canonicalize({}, min_extent);
  const auto candidates = CaliperRectangles(hull);
  double min_area = INFINITY;
  for (const auto& [area, box] : candidates) min_area = std::min(min_area, area);

  const OrientedBox* best = nullptr;
  double best_score = INFINITY;
  for (const auto& [area, box] : candidates) {
    if (area > min_area * (1.0 + area_tolerance)) continue;
    const double score = area_tolerance > 0.0 ? MeanBoundaryDistance(points, box) : area;
    if (best == nullptr || score < best_score) {
      best = &box;
      best_score = score;
    }
  }
  return Canonicalize(*best, min_extent);
}

OrientedBox CompleteFootprint(const OrientedBox& box, double width) {
  if (box.width >= width) return box;
  Vec2 normal{-std::sin(box.yaw), std::cos(box.yaw)};
  if (Dot(box.center(), normal) < 0.0) normal = -1.0 * normal;
  const Vec2 c = box.center() + 0.5 * (width - box.width) * normal;
  OrientedBox out = box;
  out.center_x = c.x;
  out.center_y = c.y;
  out.width = width;
  return out;
}

std::vector<std::vector<int>> ClusterPoints(std::span<const Vec2> points,
                                            double radius) {
  // Cells of side radius / sqrt(2): points sharing a cell are always linked,
  // and linked points are at most two cells apart.
  const double cell = radius / std::numbers::sqrt2;
  const double r2 = radius * radius;
  std::unordered_map<int64_t, int> cell_index;
  std::vector<std::pair<int64_t, int64_t>> cell_coords;
  std::vector<std::vector<int>> members;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    const auto ix = static_cast<int64_t>(std::floor(points[i].x / cell));
    const auto iy = static_cast<int64_t>(std::floor(points[i].y / cell));
    const auto [it, inserted] =
        cell_index.try_emplace(CellKey(ix, iy), static_cast<int>(members.size()));
    if (inserted) {
      members.emplace_back();
      cell_coords.emplace_back(ix, iy);
    }
    members[it->second].push_back(i);
  }

  DisjointSets sets(static_cast<int>(members.size()));
  for (int c = 0; c < static_cast<int>(members.size()); ++c) {
    const auto [ix, iy] = cell_coords[c];
    for (int dx = -2; dx <= 2; ++dx) {
      for (int dy = -2; dy <= 2; ++dy) {
        if (dx < 0 || (dx == 0 && dy <= 0)) continue;
        const auto it = cell_index.find(CellKey(ix + dx, iy + dy));
        if (it == cell_index.end()) continue;
        const int other = it->second;
        if (sets.Find(c) == sets.Find(other)) continue;
        bool linked = false;
        for (int i : members[c]) {
          for (int j : members[other]) {
            const Vec2 d = points[i] - points[j];
            if (d.x * d.x + d.y * d.y <= r2) {
              linked = true;
              break;
            }
          }
          if (linked) break;
        }
        if (linked) sets.Union(c, other);
      }
    }
  }

  // Components ordered by their smallest point index.
  std::vector<int> component_of_root(members.size(), -1);
  std::vector<std::vector<int>> clusters;
  std::vector<int> point_cell(points.size());
  for (int c = 0; c < static_cast<int>(members.size()); ++c) {
    for (int i : members[c]) point_cell[i] = c;
  }
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    const int root = sets.Find(point_cell[i]);
    if (component_of_root[root] < 0) {
      component_of_root[root] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[component_of_root[root]].push_back(i);
  }
  return clusters;
}

std::vector<Detection> DetectObjects(const PointCloudFrame& frame,
                                     const DetectorParams& params) {
  std::vector<Vec2> planar;
  std::vector<float> heights;
  const double ground_cut = params.ground_z + params.ground_epsilon;
  for (const LidarPoint& p : frame.points) {
    if (p.z <= ground_cut) continue;
    planar.push_back({p.x, p.y});
    heights.push_back(p.z);
  }

  std::vector<Detection> detections;
  for (const std::vector<int>& cluster :
       ClusterPoints(planar, params.cluster_radius)) {
    if (static_cast<int>(cluster.size()) < params.min_points) continue;
    std::vector<Vec2> members;
    members.reserve(cluster.size());
    double top = -INFINITY;
    for (int i : cluster) {
      members.push_back(planar[i]);
      top = std::max(top, static_cast<double>(heights[i]));
    }
    const double height = top - params.ground_z;
    Detection det;
    det.box = FitFootprint(members, params.min_extent, params.area_tie_tolerance);
    det.height = height;
    det.z = params.ground_z + 0.5 * height;
    if (det.box.area() < params.pedestrian_max_area &&
        det.box.length <= params.pedestrian_max_length) {
      if (height < params.min_object_height) continue;
      det.cls = AgentClass::kPedestrian;
      det.box = CompleteFootprint(det.box, params.pedestrian_size);
      det.box.length = std::max(det.box.length, params.pedestrian_size);
    } else {
      // A thin cluster shorter than a vehicle side is the end face.
      const bool thin = det.box.width < params.min_vehicle_width;
      const bool end_view = thin && det.box.length < params.min_vehicle_length;
      const bool truck = height >= params.truck_min_height &&
                         (det.box.length >= params.truck_min_length || end_view);
      det.cls = truck ? AgentClass::kTruck : AgentClass::kCar;
      if (end_view) {
        det.box = Canonicalize(
            CompleteFootprint(det.box, truck ? params.truck_length : params.car_length),
            params.min_extent);
      } else if (thin) {
        det.box = CompleteFootprint(det.box,
                                    truck ? params.truck_width : params.car_width);
      }
    }
    det.confidence = std::min(
        1.0, static_cast<double>(cluster.size()) / params.reference_points);
    detections.push_back(det);
  }
  return detections;
}

std::vector<Detection> ReferenceDetector::Detect(
    const DetectionInput& input) const {
  if (input.cloud == nullptr) return {};
  return DetectObjects(*input.cloud, params_);
}

std::vector<Detection> IdealDetector::Detect(const DetectionInput& input) const {
  std::vector<Detection> detections;
  detections.reserve(input.ground_truth.size());
  for (const LabeledBox& label : input.ground_truth) {
    Detection det;
    det.cls = label.cls;
    det.box = label.footprint();
    det.confidence = 1.0;
    det.z = label.z;
    det.height = label.height;
    detections.push_back(det);
  }
  return detections;
}

absl::StatusOr<std::unique_ptr<Detector>> MakeDetector(
    const std::string& name, const DetectorParams& params) {
  if (name == "reference") return std::make_unique<ReferenceDetector>(params);
  if (name == "ideal") return std::make_unique<IdealDetector>();
  return absl::InvalidArgumentError(absl::StrCat("unknown detector '", name, "'"));
}

}  // namespace cmm
