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

#ifndef CMM_PERCEPTION_DETECTOR_H_
#define CMM_PERCEPTION_DETECTOR_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/common/geometry.h"
#include "cmm/lidar/point_cloud.h"
#include "cmm/perception/detection.h"
#include "cmm/scenario/scenario.h"

namespace cmm {

// Thresholds of the geometric reference detector.
struct DetectorParams {
  double ground_z = -1.73;        // road plane in the sensor frame
  double ground_epsilon = 0.15;   // points below ground_z + epsilon are road
  double cluster_radius = 0.7;
  int min_points = 12;
  double pedestrian_max_area = 1.0;   // footprint m^2
  double pedestrian_max_length = 1.2;
  double min_object_height = 1.0;     // shorter small clusters are clutter
  double truck_min_length = 6.0;
  double truck_min_height = 2.5;
  int reference_points = 100;         // confidence saturates here
  double min_extent = 0.1;            // floor on fitted box sides
  // Rectangles within this relative margin of the minimum area compete on
  // how tightly the points hug their edges.
  double area_tie_tolerance = 0.15;
  // Vehicles seen along one face only are extended away from the sensor to
  // the nominal footprint: widened for a side view, lengthened for an end
  // view.
  double min_vehicle_length = 2.5;
  double min_vehicle_width = 1.2;
  double car_length = 4.5;
  double car_width = 1.8;
  double truck_length = 8.0;
  double truck_width = 2.5;
  double pedestrian_size = 0.6;

  friend bool operator==(const DetectorParams&, const DetectorParams&) = default;
};

// Minimum-area enclosing rectangle of a planar point set (convex hull plus
// rotating calipers). Yaw is reported in [0, pi) along the longer side.
OrientedBox MinAreaRectangle(std::span<const Vec2> points, double min_extent);

// Like MinAreaRectangle, but among rectangles whose area is within
// `area_tolerance` of the minimum picks the one with the smallest mean
// distance from the points to the rectangle boundary. This resolves the
// ambiguity of L-shaped views, whose hull admits equal-area rectangles along
// either leg or along the diagonal.
OrientedBox FitFootprint(std::span<const Vec2> points, double min_extent,
                         double area_tolerance);

// Widens a box seen along a single face to `width`, keeping the
// visible face fixed and growing away from the sensor at the origin.
OrientedBox CompleteFootprint(const OrientedBox& box, double width);

// Convex hull, counter-clockwise, without collinear points.
std::vector<Vec2> ConvexHull(std::vector<Vec2> points);

// Connected components of the graph linking points closer than `radius`
// (planar distance). Returns one index list per component.
std::vector<std::vector<int>> ClusterPoints(std::span<const Vec2> points,
                                            double radius);

// Ground removal, clustering, box fitting and size-based classification on a
// geofenced frame.
std::vector<Detection> DetectObjects(const PointCloudFrame& frame,
                                     const DetectorParams& params);

// What a detector may look at for one frame. Only the ideal detector reads
// `ground_truth`.
struct DetectionInput {
  const PointCloudFrame* cloud = nullptr;
  std::span<const LabeledBox> ground_truth;
};

class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::string name() const = 0;
  virtual bool needs_point_cloud() const { return true; }
  virtual std::vector<Detection> Detect(const DetectionInput& input) const = 0;
};

class ReferenceDetector : public Detector {
 public:
  explicit ReferenceDetector(DetectorParams params) : params_(params) {}
  std::string name() const override { return "reference"; }
  std::vector<Detection> Detect(const DetectionInput& input) const override;

 private:
  DetectorParams params_;
};

// Reports the ground-truth labels verbatim with confidence 1.
class IdealDetector : public Detector {
 public:
  std::string name() const override { return "ideal"; }
  bool needs_point_cloud() const override { return false; }
  std::vector<Detection> Detect(const DetectionInput& input) const override;
};

absl::StatusOr<std::unique_ptr<Detector>> MakeDetector(
    const std::string& name, const DetectorParams& params);

}  // namespace cmm

#endif  // CMM_PERCEPTION_DETECTOR_H_
