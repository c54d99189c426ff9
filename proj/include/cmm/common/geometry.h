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

#ifndef CMM_COMMON_GEOMETRY_H_
#define CMM_COMMON_GEOMETRY_H_

#include <array>
#include <cmath>
#include <numbers>

namespace cmm {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double Dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double Cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double Norm(Vec2 a) { return std::hypot(a.x, a.y); }

inline Vec2 Rotate(Vec2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

// Wraps an angle into (-pi, pi].
inline double NormalizeYaw(double yaw) {
  constexpr double kPi = std::numbers::pi;
  double wrapped = std::remainder(yaw, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

// Pose of a rigid body (or a sensor) in the ground plane.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose2D&, const Pose2D&) = default;
};

// Expresses a world-frame point in the local frame of `frame`.
inline Vec2 ToLocal(const Pose2D& frame, Vec2 world) {
  return Rotate(world - frame.position(), -frame.yaw);
}

inline Vec2 ToWorld(const Pose2D& frame, Vec2 local) {
  return Rotate(local, frame.yaw) + frame.position();
}

// A rectangle in the ground plane. `yaw` is the direction of the `length`
// axis.
struct OrientedBox {
  double center_x = 0.0;
  double center_y = 0.0;
  double length = 0.0;
  double width = 0.0;
  double yaw = 0.0;

  Vec2 center() const { return {center_x, center_y}; }
  double area() const { return length * width; }

  // Corners in counter-clockwise order.
  std::array<Vec2, 4> Corners() const {
    const Vec2 u = Rotate({0.5 * length, 0.0}, yaw);
    const Vec2 v = Rotate({0.0, 0.5 * width}, yaw);
    const Vec2 c = center();
    return {c + u + (-1.0) * v, c + u + v, c + (-1.0) * u + v,
            c + (-1.0) * u + (-1.0) * v};
  }

  friend bool operator==(const OrientedBox&, const OrientedBox&) = default;
};

}  // namespace cmm

#endif  // CMM_COMMON_GEOMETRY_H_
