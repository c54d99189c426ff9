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

#ifndef CMM_PROTOCOL_SOCKET_CHANNEL_H_
#define CMM_PROTOCOL_SOCKET_CHANNEL_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <queue>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "cmm/protocol/channel.h"
#include "cmm/protocol/perception_frame.h"

namespace cmm {

// Owned file descriptor.
class UniqueFd {
 public:
  UniqueFd() = default;
  explicit UniqueFd(int fd) : fd_(fd) {}
  UniqueFd(UniqueFd&& other) noexcept : fd_(other.release()) {}
  UniqueFd& operator=(UniqueFd&& other) noexcept;
  UniqueFd(const UniqueFd&) = delete;
  UniqueFd& operator=(const UniqueFd&) = delete;
  ~UniqueFd() { reset(); }

  int get() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release();
  void reset(int fd = -1);

 private:
  int fd_ = -1;
};

// TCP listener bound to 127.0.0.1. Port 0 picks an ephemeral port.
class TcpListener {
 public:
  static absl::StatusOr<TcpListener> Bind(uint16_t port);

  uint16_t port() const { return port_; }
  int fd() const { return fd_.get(); }

 private:
  TcpListener(UniqueFd fd, uint16_t port) : fd_(std::move(fd)), port_(port) {}

  UniqueFd fd_;
  uint16_t port_ = 0;
};

struct RetryPolicy {
  int max_attempts = 20;
  std::chrono::milliseconds initial_backoff{20};
  std::chrono::milliseconds max_backoff{500};
};

// Writer side of the socket channel. Send() applies drop and delay on the
// caller's thread using the same draw order as DeterministicChannel; a writer
// thread releases each surviving message once its wall-clock delay elapses.
class SocketSender {
 public:
  static absl::StatusOr<std::unique_ptr<SocketSender>> Connect(
      std::string host, uint16_t port, const ChannelConfig& config,
      RetryPolicy retry = {});
  ~SocketSender();

  void Send(std::vector<uint8_t> bytes, uint64_t frame_id);
  // Waits for queued messages to be written, then closes the connection.
  // Returns an error if the connection could not be kept up.
  absl::Status Close();

  ChannelStats stats() const;

 private:
  struct Pending {
    std::chrono::steady_clock::time_point due;
    uint64_t frame_id = 0;
    double delay_ms = 0.0;
    std::vector<uint8_t> bytes;
  };
  struct Later {
    bool operator()(const Pending& a, const Pending& b) const {
      if (a.due != b.due) return a.due > b.due;
      return a.frame_id > b.frame_id;
    }
  };

  SocketSender(std::string host, uint16_t port, const ChannelConfig& config,
               RetryPolicy retry);
  absl::Status Reconnect();
  void WriterLoop();

  const std::string host_;
  const uint16_t port_;
  const ChannelConfig config_;
  const RetryPolicy retry_;
  std::mt19937_64 rng_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
  bool closing_ = false;
  absl::Status transport_status_;
  ChannelStats stats_;

  UniqueFd fd_;  // writer thread only, after construction
  std::thread writer_;
};

// Reader side: accepts one sender at a time, decodes the stream and hands
// frames to the consumer in arrival order. After the sender disconnects it
// waits `reconnect_grace` for a new connection before finishing.
class SocketReceiver {
 public:
  SocketReceiver(TcpListener listener,
                 std::chrono::milliseconds reconnect_grace =
                     std::chrono::milliseconds(1000),
                 std::chrono::milliseconds first_connect_timeout =
                     std::chrono::milliseconds(10000));
  ~SocketReceiver();

  // Frames received since the last call; never blocks.
  std::vector<PerceptionFrame> Poll();
  // Blocks until a frame arrives or the stream finishes. Returns false once
  // finished and drained.
  bool WaitForFrames(std::vector<PerceptionFrame>& out);

  bool finished() const;
  int64_t protocol_errors() const;
  int64_t connections() const;
  // Set when no sender ever connected.
  bool timed_out() const;

 private:
  void ReaderLoop();

  TcpListener listener_;
  const std::chrono::milliseconds grace_;
  const std::chrono::milliseconds first_timeout_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<PerceptionFrame> frames_;
  bool stop_ = false;
  bool finished_ = false;
  bool timed_out_ = false;
  int64_t protocol_errors_ = 0;
  int64_t base_errors_ = 0;  // from closed connections
  int64_t connections_ = 0;
  std::thread reader_;
};

}  // namespace cmm

#endif  // CMM_PROTOCOL_SOCKET_CHANNEL_H_
