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

#ifndef CMM_PROTOCOL_CODEC_H_
#define CMM_PROTOCOL_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/protocol/perception_frame.h"

namespace cmm {

// Wire format, per message:
//
//   [u32 big-endian payload length][UTF-8 JSON payload]
//
// payload = {"frame_id":u64,"sim_time_ms":i64,"sensor_id":str,
//            "objects":[{"cls":str,"x":f,"y":f,"l":f,"w":f,"yaw":f,"conf":f}]}
inline constexpr size_t kFrameHeaderBytes = 4;
inline constexpr uint32_t kMaxPayloadBytes = 16u << 20;

std::string EncodePayload(const PerceptionFrame& frame);
std::vector<uint8_t> Encode(const PerceptionFrame& frame);

// Parses and validates a JSON payload. Unknown fields are ignored; missing
// or mistyped required fields yield InvalidArgument.
absl::StatusOr<PerceptionFrame> DecodePayload(std::string_view payload);

enum class DecodeOutcome { kFrame, kIncomplete, kProtocolError };

struct DecodeResult {
  DecodeOutcome outcome = DecodeOutcome::kIncomplete;
  PerceptionFrame frame;   // valid when outcome == kFrame
  size_t consumed = 0;     // bytes to drop from the front of the buffer
  std::string error;       // set when outcome == kProtocolError
};

// Decodes the first framed message in `buffer`. A malformed payload is
// consumed and reported; an oversized length prefix consumes the whole
// buffer since the stream cannot be resynchronized.
DecodeResult DecodeFramed(std::span<const uint8_t> buffer);

// Accumulates bytes from a stream and yields complete frames in order.
class FrameStreamDecoder {
 public:
  void Append(std::span<const uint8_t> bytes);
  // Complete, valid frames decoded so far; malformed ones are counted.
  std::vector<PerceptionFrame> Drain();

  int64_t protocol_errors() const { return protocol_errors_; }
  size_t buffered_bytes() const { return buffer_.size(); }
  const std::string& last_error() const { return last_error_; }

 private:
  std::vector<uint8_t> buffer_;
  int64_t protocol_errors_ = 0;
  std::string last_error_;
};

}  // namespace cmm

#endif  // CMM_PROTOCOL_CODEC_H_
