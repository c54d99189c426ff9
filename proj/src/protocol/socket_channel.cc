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

#include "cmm/protocol/socket_channel.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "absl/strings/str_cat.h"
#include "cmm/protocol/codec.h"

namespace cmm {
namespace {

constexpr int kPollSliceMs = 50;

absl::Status ErrnoStatus(const std::string& what) {
  return absl::UnavailableError(absl::StrCat(what, ": ", std::strerror(errno)));
}

bool WriteAll(int fd, const uint8_t* data, size_t size) {
  while (size > 0) {
    const ssize_t n = ::send(fd, data, size, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data += n;
    size -= static_cast<size_t>(n);
  }
  return true;
}

absl::StatusOr<UniqueFd> ConnectOnce(const std::string& host, uint16_t port) {
  UniqueFd fd(::socket(AF_INET, SOCK_STREAM, 0));
  if (!fd.valid()) return ErrnoStatus("socket");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    return absl::InvalidArgumentError(absl::StrCat("bad IPv4 address: ", host));
  }
  if (::connect(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    return ErrnoStatus("connect");
  }
  const int one = 1;
  ::setsockopt(fd.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return fd;
}

}  // namespace

UniqueFd& UniqueFd::operator=(UniqueFd&& other) noexcept {
  if (this != &other) reset(other.release());
  return *this;
}

int UniqueFd::release() {
  const int fd = fd_;
  fd_ = -1;
  return fd;
}

void UniqueFd::reset(int fd) {
  if (fd_ >= 0) ::close(fd_);
  fd_ = fd;
}

absl::StatusOr<TcpListener> TcpListener::Bind(uint16_t port) {
  UniqueFd fd(::socket(AF_INET, SOCK_STREAM, 0));
  if (!fd.valid()) return ErrnoStatus("socket");
  const int one = 1;
  ::setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  if (::bind(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    return ErrnoStatus("bind");
  }
  if (::listen(fd.get(), 4) != 0) return ErrnoStatus("listen");
  socklen_t len = sizeof(addr);
  if (::getsockname(fd.get(), reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    return ErrnoStatus("getsockname");
  }
  return TcpListener(std::move(fd), ntohs(addr.sin_port));
}

// ---------------------------------------------------------------------------
// SocketSender

SocketSender::SocketSender(std::string host, uint16_t port,
                           const ChannelConfig& config, RetryPolicy retry)
    : host_(std::move(host)),
      port_(port),
      config_(config),
      retry_(retry),
      rng_(config.seed) {}

absl::StatusOr<std::unique_ptr<SocketSender>> SocketSender::Connect(
    std::string host, uint16_t port, const ChannelConfig& config,
    RetryPolicy retry) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  std::unique_ptr<SocketSender> sender(
      new SocketSender(std::move(host), port, config, retry));
  if (absl::Status s = sender->Reconnect(); !s.ok()) return s;
  sender->writer_ = std::thread([p = sender.get()] { p->WriterLoop(); });
  return sender;
}

SocketSender::~SocketSender() {
  if (writer_.joinable()) Close().IgnoreError();
}

absl::Status SocketSender::Reconnect() {
  auto backoff = retry_.initial_backoff;
  absl::Status last = absl::UnavailableError("no connection attempt made");
  for (int attempt = 0; attempt < retry_.max_attempts; ++attempt) {
    absl::StatusOr<UniqueFd> fd = ConnectOnce(host_, port_);
    if (fd.ok()) {
      fd_ = *std::move(fd);
      return absl::OkStatus();
    }
    last = fd.status();
    if (absl::IsInvalidArgument(last)) return last;
    std::this_thread::sleep_for(backoff);
    backoff = std::min(backoff * 2, retry_.max_backoff);
  }
  return absl::UnavailableError(
      absl::StrCat("peer ", host_, ":", port_, " unreachable after ",
                   retry_.max_attempts, " attempts: ", last.message()));
}

void SocketSender::Send(std::vector<uint8_t> bytes, uint64_t frame_id) {
  std::lock_guard<std::mutex> lock(mu_);
  ++stats_.sent;
  const double delay = SampleDelay(config_, rng_);
  if (ShouldDrop(config_, rng_)) {
    ++stats_.dropped;
    return;
  }
  if (!transport_status_.ok()) {
    ++stats_.lost;
    return;
  }
  Pending p;
  p.due = std::chrono::steady_clock::now() +
          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
              std::chrono::duration<double, std::milli>(delay));
  p.frame_id = frame_id;
  p.delay_ms = delay;
  p.bytes = std::move(bytes);
  queue_.push(std::move(p));
  cv_.notify_all();
}

void SocketSender::WriterLoop() {
  std::unique_lock<std::mutex> lock(mu_);
  while (true) {
    if (queue_.empty()) {
      if (closing_) break;
      cv_.wait(lock);
      continue;
    }
    if (queue_.top().due > std::chrono::steady_clock::now()) {
      cv_.wait_until(lock, queue_.top().due);
      continue;
    }
    Pending p = queue_.top();
    queue_.pop();
    lock.unlock();
    const bool ok = WriteAll(fd_.get(), p.bytes.data(), p.bytes.size());
    absl::Status reconnect = absl::OkStatus();
    if (!ok) {
      fd_.reset();
      reconnect = Reconnect();
    }
    lock.lock();
    if (ok) {
      ++stats_.delivered;
      stats_.delay_sum_ms += p.delay_ms;
      stats_.delay_sq_sum_ms += p.delay_ms * p.delay_ms;
      continue;
    }
    ++stats_.lost;
    if (!reconnect.ok()) {
      transport_status_ = reconnect;
      stats_.lost += static_cast<int64_t>(queue_.size());
      queue_ = {};
      break;
    }
  }
}

absl::Status SocketSender::Close() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    closing_ = true;
  }
  cv_.notify_all();
  if (writer_.joinable()) writer_.join();
  if (fd_.valid()) {
    ::shutdown(fd_.get(), SHUT_WR);
    fd_.reset();
  }
  std::lock_guard<std::mutex> lock(mu_);
  return transport_status_;
}

ChannelStats SocketSender::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

// ---------------------------------------------------------------------------
// SocketReceiver

SocketReceiver::SocketReceiver(TcpListener listener,
                               std::chrono::milliseconds reconnect_grace,
                               std::chrono::milliseconds first_connect_timeout)
    : listener_(std::move(listener)),
      grace_(reconnect_grace),
      first_timeout_(first_connect_timeout) {
  reader_ = std::thread([this] { ReaderLoop(); });
}

SocketReceiver::~SocketReceiver() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  if (reader_.joinable()) reader_.join();
}

void SocketReceiver::ReaderLoop() {
  using Clock = std::chrono::steady_clock;
  auto stopping = [this] {
    std::lock_guard<std::mutex> lock(mu_);
    return stop_;
  };
  Clock::time_point deadline = Clock::now() + first_timeout_;
  std::vector<uint8_t> chunk(64 * 1024);

  while (!stopping()) {
    pollfd pfd{listener_.fd(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, kPollSliceMs);
    if (ready <= 0) {
      if (Clock::now() >= deadline) break;
      continue;
    }
    UniqueFd conn(::accept(listener_.fd(), nullptr, nullptr));
    if (!conn.valid()) continue;
    {
      std::lock_guard<std::mutex> lock(mu_);
      ++connections_;
    }

    FrameStreamDecoder decoder;
    while (!stopping()) {
      pollfd cfd{conn.get(), POLLIN, 0};
      if (::poll(&cfd, 1, kPollSliceMs) <= 0) continue;
      const ssize_t n = ::recv(conn.get(), chunk.data(), chunk.size(), 0);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;
      decoder.Append(std::span<const uint8_t>(chunk.data(), static_cast<size_t>(n)));
      std::vector<PerceptionFrame> frames = decoder.Drain();
      std::lock_guard<std::mutex> lock(mu_);
      protocol_errors_ = base_errors_ + decoder.protocol_errors();
      for (PerceptionFrame& f : frames) frames_.push_back(std::move(f));
      if (!frames.empty()) cv_.notify_all();
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      // A trailing partial message is unrecoverable once the stream ends.
      if (decoder.buffered_bytes() > 0) ++base_errors_;
      base_errors_ += decoder.protocol_errors();
      protocol_errors_ = base_errors_;
    }
    deadline = Clock::now() + grace_;
  }

  std::lock_guard<std::mutex> lock(mu_);
  timed_out_ = connections_ == 0;
  finished_ = true;
  cv_.notify_all();
}

std::vector<PerceptionFrame> SocketReceiver::Poll() {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<PerceptionFrame> out(std::make_move_iterator(frames_.begin()),
                                   std::make_move_iterator(frames_.end()));
  frames_.clear();
  return out;
}

bool SocketReceiver::WaitForFrames(std::vector<PerceptionFrame>& out) {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [this] { return !frames_.empty() || finished_; });
  out.assign(std::make_move_iterator(frames_.begin()),
             std::make_move_iterator(frames_.end()));
  frames_.clear();
  return !out.empty() || !finished_;
}

bool SocketReceiver::finished() const {
  std::lock_guard<std::mutex> lock(mu_);
  return finished_ && frames_.empty();
}

int64_t SocketReceiver::protocol_errors() const {
  std::lock_guard<std::mutex> lock(mu_);
  return protocol_errors_;
}

int64_t SocketReceiver::connections() const {
  std::lock_guard<std::mutex> lock(mu_);
  return connections_;
}

bool SocketReceiver::timed_out() const {
  std::lock_guard<std::mutex> lock(mu_);
  return timed_out_;
}

}  // namespace cmm
