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

#ifndef CMM_PROTOCOL_CHANNEL_H_
#define CMM_PROTOCOL_CHANNEL_H_

#include <cstdint>
#include <ostream>
#include <queue>
#include <random>
#include <vector>

#include "absl/status/statusor.h"
#include "cmm/common/config_file.h"

namespace cmm {

// V2X impairment: total delay = innate + max(0, N(mean, std^2)); each message
// is dropped when a U(0, 1) draw falls below `drop_threshold`.
struct ChannelConfig {
  double innate_delay_ms = 150.0;
  double acd_mean_ms = 50.0;
  double acd_std_ms = 5.0;
  double drop_threshold = 0.0;
  uint64_t seed = 1;
  // Deterministic mode delivers on tick boundaries of this period.
  double tick_ms = 100.0;

  absl::Status Validate() const;
  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

// No delay, no loss.
ChannelConfig IdealChannelConfig(uint64_t seed = 1);

// Reads the [channel] section.
absl::StatusOr<ChannelConfig> ParseChannelConfig(const ConfigFile& file,
                                                 ChannelConfig defaults = {});

// Total delay of one message in milliseconds.
double SampleDelay(const ChannelConfig& config, std::mt19937_64& rng);

bool ShouldDrop(const ChannelConfig& config, std::mt19937_64& rng);

struct ChannelStats {
  int64_t sent = 0;
  int64_t dropped = 0;
  int64_t delivered = 0;
  int64_t lost = 0;  // in flight during a transport failure
  double delay_sum_ms = 0.0;
  double delay_sq_sum_ms = 0.0;

  double mean_delay_ms() const;
  double delay_stddev_ms() const;
};

void WriteChannelStatsCsv(const ChannelStats& stats, std::ostream& out);

struct ChannelMessage {
  std::vector<uint8_t> bytes;
  uint64_t frame_id = 0;
  double sent_ms = 0.0;
  double delay_ms = 0.0;     // sampled delay
  double deliver_ms = 0.0;   // scheduled delivery time
};

// In-memory channel on a simulated clock. Every Send draws one delay and one
// drop variate regardless of outcome, so runs that differ only in
// `drop_threshold` see nested drop sets.
class DeterministicChannel {
 public:
  explicit DeterministicChannel(const ChannelConfig& config);

  void Send(std::vector<uint8_t> bytes, uint64_t frame_id, double now_ms);
  // Messages whose delivery time is <= now, ordered by (delivery, frame_id).
  std::vector<ChannelMessage> Poll(double now_ms);

  const ChannelStats& stats() const { return stats_; }
  size_t in_flight() const { return queue_.size(); }

 private:
  struct Later {
    bool operator()(const ChannelMessage& a, const ChannelMessage& b) const {
      if (a.deliver_ms != b.deliver_ms) return a.deliver_ms > b.deliver_ms;
      return a.frame_id > b.frame_id;
    }
  };

  ChannelConfig config_;
  std::mt19937_64 rng_;
  std::priority_queue<ChannelMessage, std::vector<ChannelMessage>, Later> queue_;
  ChannelStats stats_;
};

}  // namespace cmm

#endif  // CMM_PROTOCOL_CHANNEL_H_
