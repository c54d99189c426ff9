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

#include "cmm/lidar/point_cloud.h"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "absl/strings/str_cat.h"

namespace cmm {
namespace {

void PutFloatLe(float value, char* out) {
  const uint32_t bits = std::bit_cast<uint32_t>(value);
  for (int b = 0; b < 4; ++b) out[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
}

float GetFloatLe(const unsigned char* in) {
  uint32_t bits = 0;
  for (int b = 0; b < 4; ++b) bits |= static_cast<uint32_t>(in[b]) << (8 * b);
  return std::bit_cast<float>(bits);
}

}  // namespace

absl::Status WriteVelodyneBin(const std::string& path,
                              const std::vector<LidarPoint>& points) {
  std::string buffer(points.size() * 16, '\0');
  char* out = buffer.data();
  for (const LidarPoint& p : points) {
    PutFloatLe(p.x, out);
    PutFloatLe(p.y, out + 4);
    PutFloatLe(p.z, out + 8);
    PutFloatLe(p.intensity, out + 12);
    out += 16;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  file.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (!file) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<LidarPoint>> ReadVelodyneBin(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::string bytes((std::istreambuf_iterator<char>(file)),
                    std::istreambuf_iterator<char>());
  if (bytes.size() % 16 != 0) {
    return absl::DataLossError(
        absl::StrCat(path, ": size ", bytes.size(), " is not a multiple of 16"));
  }
  std::vector<LidarPoint> points(bytes.size() / 16);
  const auto* in = reinterpret_cast<const unsigned char*>(bytes.data());
  for (LidarPoint& p : points) {
    p = {GetFloatLe(in), GetFloatLe(in + 4), GetFloatLe(in + 8),
         GetFloatLe(in + 12)};
    in += 16;
  }
  return points;
}

}  // namespace cmm
