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

#ifndef CMM_PERCEPTION_BEV_H_
#define CMM_PERCEPTION_BEV_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "cmm/common/geofence.h"
#include "cmm/lidar/point_cloud.h"

namespace cmm {

// How the density channel maps a cell's point count N into [0, 1].
enum class DensityNormalization {
  kLog64,       // min(1, log(N + 1) / log(64)): saturates at N = 63
  kLiteral64,   // min(1, log(N + 1) / 64): never saturates in practice
};

struct BevGridConfig {
  int width = 608;    // cells along y
  int height = 608;   // cells along x
  double range_x = 50.0;
  double range_y = 50.0;
  Interval z{-2.74, 1.36};  // height channel scaling
  DensityNormalization density = DensityNormalization::kLog64;
};

struct GridCoord {
  double x = 0.0;  // continuous row coordinate
  double y = 0.0;  // continuous column coordinate
};

// Scales a geofenced point into grid units:
//   x~ = x * h / range_x,   y~ = y * h / range_y + w / 2.
GridCoord NormalizePoint(double x, double y, const BevGridConfig& grid);

// Density / height / intensity raster. Cell (row, col) bins (x~, y~); values
// at the maximum edge fall into the last row/column.
class BevMap {
 public:
  static constexpr int kDensity = 0;
  static constexpr int kHeight = 1;
  static constexpr int kIntensity = 2;

  BevMap(int width, int height)
      : width_(width), height_(height),
        cells_(static_cast<size_t>(width) * height) {}

  int width() const { return width_; }
  int height() const { return height_; }
  const std::array<float, 3>& at(int row, int col) const {
    return cells_[static_cast<size_t>(row) * width_ + col];
  }
  std::array<float, 3>& at(int row, int col) {
    return cells_[static_cast<size_t>(row) * width_ + col];
  }

  // Row-major 8-bit RGB: channel * 255, rounded.
  std::vector<uint8_t> ToRgb8() const;

 private:
  int width_;
  int height_;
  std::vector<std::array<float, 3>> cells_;
};

double DensityValue(int64_t count, DensityNormalization mode);

// Expects a geofenced frame; points that fall outside the grid are ignored.
BevMap BuildBev(const PointCloudFrame& frame, const BevGridConfig& grid);

absl::Status WriteBevPng(const BevMap& map, const std::string& path);

}  // namespace cmm

#endif  // CMM_PERCEPTION_BEV_H_
