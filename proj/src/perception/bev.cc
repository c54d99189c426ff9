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

#include "cmm/perception/bev.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "absl/strings/str_cat.h"

namespace cmm {

GridCoord NormalizePoint(double x, double y, const BevGridConfig& grid) {
  return {x * grid.height / grid.range_x,
          y * grid.height / grid.range_y + 0.5 * grid.width};
}

double DensityValue(int64_t count, DensityNormalization mode) {
  const double numerator = std::log(static_cast<double>(count) + 1.0);
  const double denominator =
      mode == DensityNormalization::kLog64 ? std::log(64.0) : 64.0;
  return std::min(1.0, numerator / denominator);
}

std::vector<uint8_t> BevMap::ToRgb8() const {
  std::vector<uint8_t> rgb;
  rgb.reserve(cells_.size() * 3);
  for (const auto& cell : cells_) {
    for (float v : cell) {
      rgb.push_back(static_cast<uint8_t>(
          std::lround(std::clamp(static_cast<double>(v), 0.0, 1.0) * 255.0)));
    }
  }
  return rgb;
}

BevMap BuildBev(const PointCloudFrame& frame, const BevGridConfig& grid) {
  BevMap map(grid.width, grid.height);
  std::vector<int64_t> counts(static_cast<size_t>(grid.width) * grid.height, 0);
  std::vector<float> max_z(counts.size(), -INFINITY);
  const double z_span = grid.z.span();

  for (const LidarPoint& p : frame.points) {
    const GridCoord g = NormalizePoint(p.x, p.y, grid);
    if (!(g.x >= 0.0 && g.y >= 0.0 && g.x <= grid.height && g.y <= grid.width)) {
      continue;
    }
    const int row = std::min(static_cast<int>(g.x), grid.height - 1);
    const int col = std::min(static_cast<int>(g.y), grid.width - 1);
    const size_t index = static_cast<size_t>(row) * grid.width + col;
    ++counts[index];
    max_z[index] = std::max(max_z[index], p.z);
    auto& cell = map.at(row, col);
    cell[BevMap::kIntensity] = std::max(cell[BevMap::kIntensity], p.intensity);
  }
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      const size_t index = static_cast<size_t>(row) * grid.width + col;
      if (counts[index] == 0) continue;
      auto& cell = map.at(row, col);
      cell[BevMap::kDensity] =
          static_cast<float>(DensityValue(counts[index], grid.density));
      cell[BevMap::kHeight] = static_cast<float>(
          std::clamp((max_z[index] - grid.z.min) / z_span, 0.0, 1.0));
      cell[BevMap::kIntensity] = std::clamp(cell[BevMap::kIntensity], 0.0f, 1.0f);
    }
  }
  return map;
}

absl::Status WriteBevPng(const BevMap& map, const std::string& path) {
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"),
                                             &std::fclose);
  if (!file) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    return absl::InternalError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return absl::InternalError(absl::StrCat("libpng failed writing ", path));
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, map.width(), map.height(), 8, PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<uint8_t> rgb = map.ToRgb8();
  for (int row = 0; row < map.height(); ++row) {
    png_write_row(png, rgb.data() + static_cast<size_t>(row) * map.width() * 3);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return absl::OkStatus();
}

}  // namespace cmm
