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

#include "cmm/lidar/lidar_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace cmm {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kZeroIntensity = 1e-6;
constexpr double kParallelEps = 1e-12;

// Scene primitive in the sensor frame (origin at the optical center).
struct Target {
  int id = 0;
  bool cylinder = false;
  Vec2 center;
  double cos_yaw = 1.0;
  double sin_yaw = 0.0;
  double half_length = 0.0;
  double half_width = 0.0;  // radius for cylinders
  double z_bottom = 0.0;
  double z_top = 0.0;
};

// Entry distance of the ray into [lo, hi] along one axis, updating the
// running (t_near, t_far) window. Returns false when the slab is missed.
bool ClipSlab(double origin, double dir, double lo, double hi, double& t_near,
              double& t_far) {
  if (std::abs(dir) < kParallelEps) return origin >= lo && origin <= hi;
  double t0 = (lo - origin) / dir;
  double t1 = (hi - origin) / dir;
  if (t0 > t1) std::swap(t0, t1);
  t_near = std::max(t_near, t0);
  t_far = std::min(t_far, t1);
  return t_near <= t_far;
}

double IntersectBox(const Target& box, double dx, double dy, double dz) {
  // Ray origin and direction in the box frame.
  const double ox = -(box.cos_yaw * box.center.x + box.sin_yaw * box.center.y);
  const double oy = -(-box.sin_yaw * box.center.x + box.cos_yaw * box.center.y);
  const double lx = box.cos_yaw * dx + box.sin_yaw * dy;
  const double ly = -box.sin_yaw * dx + box.cos_yaw * dy;
  double t_near = 0.0;
  double t_far = std::numeric_limits<double>::infinity();
  if (!ClipSlab(ox, lx, -box.half_length, box.half_length, t_near, t_far) ||
      !ClipSlab(oy, ly, -box.half_width, box.half_width, t_near, t_far) ||
      !ClipSlab(0.0, dz, box.z_bottom, box.z_top, t_near, t_far)) {
    return std::numeric_limits<double>::infinity();
  }
  return t_near > 0.0 ? t_near : std::numeric_limits<double>::infinity();
}

double IntersectCylinder(const Target& cyl, double dx, double dy, double dz) {
  double best = std::numeric_limits<double>::infinity();
  const double r = cyl.half_width;
  const double a = dx * dx + dy * dy;
  if (a > kParallelEps) {
    const double ox = -cyl.center.x;
    const double oy = -cyl.center.y;
    const double b = 2.0 * (ox * dx + oy * dy);
    const double c = ox * ox + oy * oy - r * r;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double t = (-b - std::sqrt(disc)) / (2.0 * a);
      const double z = t * dz;
      if (t > 0.0 && z >= cyl.z_bottom && z <= cyl.z_top) best = t;
    }
  }
  // Top cap, seen from above.
  if (dz < -kParallelEps && cyl.z_top < 0.0) {
    const double t = cyl.z_top / dz;
    const double px = t * dx - cyl.center.x;
    const double py = t * dy - cyl.center.y;
    if (t > 0.0 && px * px + py * py <= r * r) best = std::min(best, t);
  }
  return best;
}

std::vector<Target> BuildTargets(const WorldState& state,
                                 const SensorMount& mount) {
  const Pose2D frame{mount.x, mount.y, mount.yaw};
  std::vector<Target> targets;
  targets.reserve(state.agents.size());
  for (const AgentState& agent : state.agents) {
    Target t;
    t.id = agent.id;
    t.cylinder = agent.cls == AgentClass::kPedestrian;
    t.center = ToLocal(frame, agent.pose.position());
    const double yaw = agent.pose.yaw - mount.yaw;
    t.cos_yaw = std::cos(yaw);
    t.sin_yaw = std::sin(yaw);
    t.half_length = 0.5 * agent.dims.length;
    t.half_width = 0.5 * agent.dims.width;
    t.z_bottom = -mount.height;
    t.z_top = agent.dims.height - mount.height;
    targets.push_back(t);
  }
  return targets;
}

}  // namespace

absl::StatusOr<double> Intensity(double distance, double attenuation) {
  if (!(distance >= 0.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("intensity distance must be non-negative, got ", distance));
  }
  if (!(attenuation >= 0.0)) {
    return absl::OutOfRangeError("attenuation must be non-negative");
  }
  return std::exp(-attenuation * distance);
}

std::vector<RawHit> CastRays(const WorldState& state, const LidarConfig& config) {
  const std::vector<Target> targets = BuildTargets(state, config.mount);
  const int columns = config.columns();
  const double step = kTwoPi / columns;

  // Azimuth culling: which targets can a given column possibly hit.
  std::vector<std::vector<int>> candidates(columns);
  for (int i = 0; i < static_cast<int>(targets.size()); ++i) {
    const Target& t = targets[i];
    const double radius = std::hypot(t.half_length, t.half_width);
    const double dist = Norm(t.center);
    if (dist <= radius) {
      for (auto& c : candidates) c.push_back(i);
      continue;
    }
    const double center_az = std::atan2(t.center.y, t.center.x);
    const double half = std::asin(radius / dist);
    const int first = static_cast<int>(std::floor((center_az - half) / step)) - 1;
    const int last = static_cast<int>(std::ceil((center_az + half) / step)) + 1;
    for (int c = first; c <= last && c - first < columns; ++c) {
      candidates[((c % columns) + columns) % columns].push_back(i);
    }
  }

  std::vector<double> cos_az(columns);
  std::vector<double> sin_az(columns);
  for (int c = 0; c < columns; ++c) {
    cos_az[c] = std::cos(config.ColumnAzimuth(c));
    sin_az[c] = std::sin(config.ColumnAzimuth(c));
  }

  std::vector<RawHit> hits;
  for (int ch = 0; ch < config.channels; ++ch) {
    const double pitch = config.ChannelPitch(ch);
    const double cp = std::cos(pitch);
    const double dz = std::sin(pitch);
    const double ground_t = dz < -kParallelEps
                                ? -config.mount.height / dz
                                : std::numeric_limits<double>::infinity();
    for (int c = 0; c < columns; ++c) {
      const double dx = cp * cos_az[c];
      const double dy = cp * sin_az[c];
      double best = ground_t;
      int target = kGroundTarget;
      for (int i : candidates[c]) {
        const Target& t = targets[i];
        const double d = t.cylinder ? IntersectCylinder(t, dx, dy, dz)
                                    : IntersectBox(t, dx, dy, dz);
        if (d < best) {
          best = d;
          target = t.id;
        }
      }
      if (best <= config.range_max) {
        hits.push_back({ch * columns + c, best, target, dx, dy, dz});
      }
    }
  }
  return hits;
}

PointCloudFrame Degrade(std::span<const RawHit> hits, const LidarConfig& config,
                        std::mt19937_64& rng) {
  std::normal_distribution<double> gaussian(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PointCloudFrame frame;
  frame.sensor = config.mount;
  frame.points.reserve(hits.size());

  size_t next = 0;
  const int num_rays = config.num_rays();
  for (int ray = 0; ray < num_rays; ++ray) {
    const double noise = gaussian(rng);
    const double draw = unit(rng);
    if (next >= hits.size() || hits[next].ray != ray) continue;
    const RawHit& hit = hits[next++];

    const double distance = std::clamp(
        hit.distance + config.noise_stddev * noise, 0.0, config.range_max);
    const double intensity = std::exp(-config.attenuation * distance);
    if (intensity < config.dropoff_intensity_limit) {
      const double p_drop = intensity < kZeroIntensity
                                ? config.dropoff_zero_intensity
                                : config.dropoff_rate;
      if (draw < p_drop) continue;
    }
    frame.points.push_back({static_cast<float>(hit.dir_x * distance),
                            static_cast<float>(hit.dir_y * distance),
                            static_cast<float>(hit.dir_z * distance),
                            static_cast<float>(intensity)});
  }
  return frame;
}

PointCloudFrame Scan(const WorldState& state, const LidarConfig& config,
                     std::mt19937_64& rng) {
  const std::vector<RawHit> hits = CastRays(state, config);
  PointCloudFrame frame = Degrade(hits, config, rng);
  frame.tick = state.tick;
  return frame;
}

}  // namespace cmm
