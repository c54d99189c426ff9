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

#ifndef CMM_DATASET_LABEL_IO_H_
#define CMM_DATASET_LABEL_IO_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cmm/perception/detection.h"
#include "cmm/scenario/scenario.h"

namespace cmm {

// One line of a label (or detection) file, sensor frame:
//
//   <class> <x> <y> <z> <l> <w> <h> <yaw> [<score>]
//
// Detection files carry the trailing score; ground-truth files do not.
struct LabelRecord {
  AgentClass cls = AgentClass::kCar;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  double yaw = 0.0;
  std::optional<double> score;

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

LabelRecord FromLabeledBox(const LabeledBox& box);
LabelRecord FromDetection(const Detection& detection);
LabeledBox ToLabeledBox(const LabelRecord& record);
// Records without a score become detections of confidence 1.
Detection ToDetection(const LabelRecord& record);

std::string FormatLabelLine(const LabelRecord& record);
absl::StatusOr<LabelRecord> ParseLabelLine(const std::string& line);

absl::Status WriteLabelFile(const std::string& path,
                            const std::vector<LabelRecord>& records);
// Blank lines are skipped. Errors name the file and line.
absl::StatusOr<std::vector<LabelRecord>> ReadLabelFile(const std::string& path);

}  // namespace cmm

#endif  // CMM_DATASET_LABEL_IO_H_
