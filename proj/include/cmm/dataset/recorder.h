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

#ifndef CMM_DATASET_RECORDER_H_
#define CMM_DATASET_RECORDER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cmm/common/config_file.h"
#include "cmm/common/geofence.h"
#include "cmm/lidar/lidar_config.h"
#include "cmm/scenario/scenario.h"

namespace cmm {

struct DatasetSpec {
  double record_hz = 2.0;
  int64_t n_frames = 200;
  // When set, simulate exactly this many ticks instead of deriving the
  // duration from `n_frames`.
  std::optional<int64_t> ticks;
  std::string out_dir;
  double train_fraction = 0.8;
  uint64_t split_seed = 1;

  // `sim_hz` is the scenario tick rate.
  absl::Status Validate(double sim_hz) const;
};

// Reads the [dataset] section.
absl::StatusOr<DatasetSpec> ParseDatasetSpec(const ConfigFile& file,
                                             DatasetSpec defaults = {});

struct DatasetFrame {
  int64_t index = 0;
  int64_t tick = 0;
  std::string velodyne;  // relative to the dataset root
  std::string label;
  int64_t num_points = 0;
  int64_t num_objects = 0;

  friend bool operator==(const DatasetFrame&, const DatasetFrame&) = default;
};

struct DataSplit {
  std::vector<int64_t> train;  // ascending frame indices
  std::vector<int64_t> val;

  friend bool operator==(const DataSplit&, const DataSplit&) = default;
};

// Seeded Fisher-Yates shuffle of 0..n-1; the first round(n * fraction)
// indices are the training set.
DataSplit MakeSplit(int64_t n, double train_fraction, uint64_t seed);

struct DatasetManifest {
  int version = 1;
  double sim_hz = 10.0;
  double record_hz = 2.0;
  uint64_t scenario_seed = 0;
  uint64_t split_seed = 0;
  double train_fraction = 0.8;
  std::vector<DatasetFrame> frames;
  DataSplit split;

  friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

std::string ManifestToJson(const DatasetManifest& manifest);
absl::StatusOr<DatasetManifest> ManifestFromJson(const std::string& text);

// Zero-padded frame stem, e.g. 000042.
std::string FrameStem(int64_t index);

// Simulates `scenario` and writes every (sim_hz / record_hz)-th post-step
// state as velodyne/NNNNNN.bin (geofenced cloud) and label_2/NNNNNN.txt
// (geofenced ground truth), then manifest.json. The output directory is
// checked for writability before anything is simulated.
absl::StatusOr<DatasetManifest> RecordDataset(const ScenarioConfig& scenario,
                                              const LidarConfig& lidar,
                                              const Geofence& region,
                                              const DatasetSpec& spec);

}  // namespace cmm

#endif  // CMM_DATASET_RECORDER_H_
