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

#include "cmm/protocol/channel.h"

#include <algorithm>
#include <cmath>

#include "cmm/common/status_macros.h"
#include "cmm/common/text_format.h"

namespace cmm {

absl::Status ChannelConfig::Validate() const {
  if (!(innate_delay_ms >= 0.0) || !std::isfinite(innate_delay_ms)) {
    return absl::InvalidArgumentError("innate delay must be non-negative");
  }
  if (!std::isfinite(acd_mean_ms) || !(acd_std_ms >= 0.0) ||
      !std::isfinite(acd_std_ms)) {
    return absl::InvalidArgumentError("ACD mean/std must be finite, std >= 0");
  }
  if (!(drop_threshold >= 0.0 && drop_threshold <= 1.0)) {
    return absl::InvalidArgumentError("drop threshold must lie in [0, 1]");
  }
  if (!(tick_ms >= 0.0)) {
    return absl::InvalidArgumentError("tick_ms must be non-negative");
  }
  return absl::OkStatus();
}

ChannelConfig IdealChannelConfig(uint64_t seed) {
  ChannelConfig c;
  c.innate_delay_ms = 0.0;
  c.acd_mean_ms = 0.0;
  c.acd_std_ms = 0.0;
  c.drop_threshold = 0.0;
  c.seed = seed;
  return c;
}

absl::StatusOr<ChannelConfig> ParseChannelConfig(const ConfigFile& file,
                                                 ChannelConfig defaults) {
  ChannelConfig c = defaults;
  CMM_ASSIGN_OR_RETURN(c.innate_delay_ms,
                       file.GetDouble("channel.innate_delay_ms", c.innate_delay_ms));
  CMM_ASSIGN_OR_RETURN(c.acd_mean_ms, file.GetDouble("channel.acd_mean_ms", c.acd_mean_ms));
  CMM_ASSIGN_OR_RETURN(c.acd_std_ms, file.GetDouble("channel.acd_std_ms", c.acd_std_ms));
  CMM_ASSIGN_OR_RETURN(c.drop_threshold,
                       file.GetDouble("channel.drop_threshold", c.drop_threshold));
  CMM_ASSIGN_OR_RETURN(const int64_t seed,
                       file.GetInt("channel.seed", static_cast<int64_t>(c.seed)));
  c.seed = static_cast<uint64_t>(seed);
  CMM_RETURN_IF_ERROR(c.Validate());
  return c;
}

double SampleDelay(const ChannelConfig& config, std::mt19937_64& rng) {
  std::normal_distribution<double> gaussian(0.0, 1.0);
  const double acd = config.acd_mean_ms + config.acd_std_ms * gaussian(rng);
  return config.innate_delay_ms + std::max(0.0, acd);
}

bool ShouldDrop(const ChannelConfig& config, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < config.drop_threshold;
}

double ChannelStats::mean_delay_ms() const {
  return delivered > 0 ? delay_sum_ms / static_cast<double>(delivered) : 0.0;
}

double ChannelStats::delay_stddev_ms() const {
  if (delivered < 2) return 0.0;
  const double n = static_cast<double>(delivered);
  const double mean = delay_sum_ms / n;
  return std::sqrt(std::max(0.0, (delay_sq_sum_ms - n * mean * mean) / (n - 1)));
}

void WriteChannelStatsCsv(const ChannelStats& stats, std::ostream& out) {
  out << "sent,dropped,delivered,lost,mean_delay_ms,delay_std_ms\n"
      << stats.sent << ',' << stats.dropped << ',' << stats.delivered << ','
      << stats.lost << ',' << FormatDouble(stats.mean_delay_ms()) << ','
      << FormatDouble(stats.delay_stddev_ms()) << '\n';
}

DeterministicChannel::DeterministicChannel(const ChannelConfig& config)
    : config_(config), rng_(config.seed) {}

void DeterministicChannel::Send(std::vector<uint8_t> bytes, uint64_t frame_id,
                                double now_ms) {
  ++stats_.sent;
  const double delay = SampleDelay(config_, rng_);
  if (ShouldDrop(config_, rng_)) {
    ++stats_.dropped;
    return;
  }
  ChannelMessage message;
  message.bytes = std::move(bytes);
  message.frame_id = frame_id;
  message.sent_ms = now_ms;
  message.delay_ms = delay;
  const double due = now_ms + delay;
  message.deliver_ms =
      config_.tick_ms > 0.0 ? std::ceil(due / config_.tick_ms) * config_.tick_ms
                            : due;
  queue_.push(std::move(message));
}

std::vector<ChannelMessage> DeterministicChannel::Poll(double now_ms) {
  std::vector<ChannelMessage> out;
  while (!queue_.empty() && queue_.top().deliver_ms <= now_ms) {
    out.push_back(queue_.top());
    queue_.pop();
    ++stats_.delivered;
    stats_.delay_sum_ms += out.back().delay_ms;
    stats_.delay_sq_sum_ms += out.back().delay_ms * out.back().delay_ms;
  }
  return out;
}

}  // namespace cmm
