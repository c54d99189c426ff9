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

#include "cmm/protocol/codec.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace cmm {
namespace {

using Json = nlohmann::ordered_json;

absl::Status MissingField(const std::string& where, const std::string& field) {
  return absl::InvalidArgumentError(
      absl::StrCat(where, ": missing or mistyped field '", field, "'"));
}

absl::StatusOr<double> NumberField(const Json& object, const char* field,
                                   const std::string& where) {
  const auto it = object.find(field);
  if (it == object.end() || !it->is_number()) return MissingField(where, field);
  return it->get<double>();
}

absl::StatusOr<PerceptionFrame> FrameFromJson(const Json& root) {
  if (!root.is_object()) {
    return absl::InvalidArgumentError("payload is not a JSON object");
  }
  PerceptionFrame frame;
  const auto id = root.find("frame_id");
  if (id == root.end() || !id->is_number_unsigned()) {
    return MissingField("frame", "frame_id");
  }
  frame.frame_id = id->get<uint64_t>();
  const auto time = root.find("sim_time_ms");
  if (time == root.end() || !time->is_number_integer()) {
    return MissingField("frame", "sim_time_ms");
  }
  if (time->is_number_unsigned() &&
      time->get<uint64_t>() > static_cast<uint64_t>(INT64_MAX)) {
    return absl::InvalidArgumentError("sim_time_ms out of range");
  }
  frame.sim_time_ms = time->get<int64_t>();
  const auto sensor = root.find("sensor_id");
  if (sensor == root.end() || !sensor->is_string()) {
    return MissingField("frame", "sensor_id");
  }
  frame.sensor_id = sensor->get<std::string>();
  const auto objects = root.find("objects");
  if (objects == root.end() || !objects->is_array()) {
    return MissingField("frame", "objects");
  }
  for (size_t i = 0; i < objects->size(); ++i) {
    const Json& item = (*objects)[i];
    const std::string where = absl::StrCat("objects[", i, "]");
    if (!item.is_object()) {
      return absl::InvalidArgumentError(absl::StrCat(where, " is not an object"));
    }
    const auto cls = item.find("cls");
    if (cls == item.end() || !cls->is_string()) return MissingField(where, "cls");
    PerceivedObject o;
    absl::StatusOr<AgentClass> parsed = ParseAgentClass(cls->get<std::string>());
    if (!parsed.ok()) return parsed.status();
    o.cls = *parsed;
    struct Field {
      const char* name;
      double* target;
    };
    for (const Field& f : {Field{"x", &o.x}, Field{"y", &o.y},
                           Field{"l", &o.length}, Field{"w", &o.width},
                           Field{"yaw", &o.yaw}, Field{"conf", &o.confidence}}) {
      absl::StatusOr<double> value = NumberField(item, f.name, where);
      if (!value.ok()) return value.status();
      *f.target = *value;
    }
    frame.objects.push_back(o);
  }
  if (absl::Status s = frame.Validate(); !s.ok()) return s;
  return frame;
}

}  // namespace

std::string EncodePayload(const PerceptionFrame& frame) {
  Json root;
  root["frame_id"] = frame.frame_id;
  root["sim_time_ms"] = frame.sim_time_ms;
  root["sensor_id"] = frame.sensor_id;
  Json objects = Json::array();
  for (const PerceivedObject& o : frame.objects) {
    Json item;
    item["cls"] = std::string(AgentClassName(o.cls));
    item["x"] = o.x;
    item["y"] = o.y;
    item["l"] = o.length;
    item["w"] = o.width;
    item["yaw"] = o.yaw;
    item["conf"] = o.confidence;
    objects.push_back(std::move(item));
  }
  root["objects"] = std::move(objects);
  return root.dump();
}

std::vector<uint8_t> Encode(const PerceptionFrame& frame) {
  const std::string payload = EncodePayload(frame);
  const auto n = static_cast<uint32_t>(payload.size());
  std::vector<uint8_t> out;
  out.reserve(kFrameHeaderBytes + payload.size());
  out.push_back(static_cast<uint8_t>(n >> 24));
  out.push_back(static_cast<uint8_t>(n >> 16));
  out.push_back(static_cast<uint8_t>(n >> 8));
  out.push_back(static_cast<uint8_t>(n));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

absl::StatusOr<PerceptionFrame> DecodePayload(std::string_view payload) {
  Json root;
  try {
    root = Json::parse(payload.begin(), payload.end(), nullptr,
                       /*allow_exceptions=*/false);
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed JSON: ", e.what()));
  }
  if (root.is_discarded()) return absl::InvalidArgumentError("malformed JSON");
  try {
    return FrameFromJson(root);
  } catch (const std::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad payload: ", e.what()));
  }
}

DecodeResult DecodeFramed(std::span<const uint8_t> buffer) {
  DecodeResult result;
  if (buffer.size() < kFrameHeaderBytes) return result;
  const uint32_t n = (static_cast<uint32_t>(buffer[0]) << 24) |
                     (static_cast<uint32_t>(buffer[1]) << 16) |
                     (static_cast<uint32_t>(buffer[2]) << 8) |
                     static_cast<uint32_t>(buffer[3]);
  if (n > kMaxPayloadBytes) {
    result.outcome = DecodeOutcome::kProtocolError;
    result.consumed = buffer.size();
    result.error = absl::StrCat("payload length ", n, " exceeds limit");
    return result;
  }
  if (buffer.size() < kFrameHeaderBytes + n) return result;
  result.consumed = kFrameHeaderBytes + n;
  const auto* begin = reinterpret_cast<const char*>(buffer.data()) + kFrameHeaderBytes;
  absl::StatusOr<PerceptionFrame> frame = DecodePayload(std::string_view(begin, n));
  if (!frame.ok()) {
    result.outcome = DecodeOutcome::kProtocolError;
    result.error = std::string(frame.status().message());
    return result;
  }
  result.outcome = DecodeOutcome::kFrame;
  result.frame = *std::move(frame);
  return result;
}

void FrameStreamDecoder::Append(std::span<const uint8_t> bytes) {
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::vector<PerceptionFrame> FrameStreamDecoder::Drain() {
  std::vector<PerceptionFrame> frames;
  size_t offset = 0;
  while (true) {
    DecodeResult r = DecodeFramed(std::span(buffer_).subspan(offset));
    if (r.outcome == DecodeOutcome::kIncomplete) break;
    offset += r.consumed;
    if (r.outcome == DecodeOutcome::kFrame) {
      frames.push_back(std::move(r.frame));
    } else {
      ++protocol_errors_;
      last_error_ = r.error;
    }
  }
  buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<ptrdiff_t>(offset));
  return frames;
}

}  // namespace cmm
