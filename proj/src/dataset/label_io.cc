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

#include "cmm/dataset/label_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "cmm/common/status_macros.h"
#include "cmm/common/text_format.h"

namespace cmm {

LabelRecord FromLabeledBox(const LabeledBox& box) {
  return {box.cls,   box.x,      box.y,     box.z, box.length,
          box.width, box.height, box.yaw,   std::nullopt};
}

LabelRecord FromDetection(const Detection& d) {
  return {d.cls,          d.box.center_x, d.box.center_y, d.z,         d.box.length,
          d.box.width,    d.height,       d.box.yaw,      d.confidence};
}

LabeledBox ToLabeledBox(const LabelRecord& r) {
  LabeledBox box;
  box.cls = r.cls;
  box.x = r.x;
  box.y = r.y;
  box.z = r.z;
  box.length = r.length;
  box.width = r.width;
  box.height = r.height;
  box.yaw = r.yaw;
  return box;
}

Detection ToDetection(const LabelRecord& r) {
  Detection d;
  d.cls = r.cls;
  d.box = {r.x, r.y, r.length, r.width, r.yaw};
  d.confidence = r.score.value_or(1.0);
  d.z = r.z;
  d.height = r.height;
  return d;
}

std::string FormatLabelLine(const LabelRecord& r) {
  std::string line = absl::StrCat(
      std::string(AgentClassName(r.cls)), " ", FormatDouble(r.x), " ",
      FormatDouble(r.y), " ", FormatDouble(r.z), " ", FormatDouble(r.length), " ",
      FormatDouble(r.width), " ", FormatDouble(r.height), " ", FormatDouble(r.yaw));
  if (r.score.has_value()) absl::StrAppend(&line, " ", FormatDouble(*r.score));
  return line;
}

absl::StatusOr<LabelRecord> ParseLabelLine(const std::string& line) {
  const std::vector<std::string> fields =
      absl::StrSplit(line, absl::ByAnyChar(" \t\r"), absl::SkipEmpty());
  if (fields.size() != 8 && fields.size() != 9) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected 8 or 9 fields, got ", fields.size()));
  }
  LabelRecord r;
  CMM_ASSIGN_OR_RETURN(r.cls, ParseAgentClass(fields[0]));
  double values[8] = {};
  for (size_t i = 1; i < fields.size(); ++i) {
    if (!absl::SimpleAtod(fields[i], &values[i - 1]) || !std::isfinite(values[i - 1])) {
      return absl::InvalidArgumentError(
          absl::StrCat("field ", i + 1, " ('", fields[i], "') is not a finite number"));
    }
  }
  r.x = values[0];
  r.y = values[1];
  r.z = values[2];
  r.length = values[3];
  r.width = values[4];
  r.height = values[5];
  r.yaw = values[6];
  if (fields.size() == 9) r.score = values[7];
  if (!(r.length > 0.0 && r.width > 0.0 && r.height >= 0.0)) {
    return absl::InvalidArgumentError("box dimensions must be positive");
  }
  return r;
}

absl::Status WriteLabelFile(const std::string& path,
                            const std::vector<LabelRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  for (const LabelRecord& r : records) out << FormatLabelLine(r) << '\n';
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::vector<LabelRecord>> ReadLabelFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::vector<LabelRecord> records;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    absl::StatusOr<LabelRecord> r = ParseLabelLine(line);
    if (!r.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_number, ": ", r.status().message()));
    }
    records.push_back(*std::move(r));
  }
  return records;
}

}  // namespace cmm
