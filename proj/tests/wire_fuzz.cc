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

#include "wire_fuzz.h"

#include <array>
#include <random>

#include "cmm/protocol/codec.h"
#include "json.hpp"

namespace cmm::testing {
namespace {

using Json = nlohmann::ordered_json;

std::vector<uint8_t> Frame(const std::string& payload) {
  const auto n = static_cast<uint32_t>(payload.size());
  std::vector<uint8_t> out = {static_cast<uint8_t>(n >> 24), static_cast<uint8_t>(n >> 16),
                              static_cast<uint8_t>(n >> 8), static_cast<uint8_t>(n)};
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

constexpr std::array<const char*, 4> kFrameKeys = {"frame_id", "sim_time_ms",
                                                   "sensor_id", "objects"};
constexpr std::array<const char*, 7> kObjectKeys = {"cls", "x", "y", "l",
                                                    "w", "yaw", "conf"};

}  // namespace

PerceptionFrame RandomFrame(uint64_t frame_id, int max_objects,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-60.0, 60.0), dim(0.1, 12.0),
      yaw(-3.2, 3.2), conf(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, max_objects), cls(0, 2);
  std::uniform_int_distribution<int64_t> time(0, int64_t{1} << 40);
  PerceptionFrame frame;
  frame.frame_id = frame_id;
  frame.sim_time_ms = time(rng);
  frame.sensor_id = "rsu-" + std::to_string(frame_id % 7);
  const int n = count(rng);
  for (int k = 0; k < n; ++k) {
    frame.objects.push_back({static_cast<AgentClass>(cls(rng)), pos(rng), pos(rng),
                             dim(rng), dim(rng), yaw(rng), conf(rng)});
  }
  return frame;
}

std::vector<FuzzCase> MalformedFrames(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FuzzCase> cases;
  cases.reserve(n);
  for (int k = 0; k < n; ++k) {
    PerceptionFrame frame = RandomFrame(static_cast<uint64_t>(k) + 1, 4, rng);
    if (frame.objects.empty()) {
      frame.objects.push_back({AgentClass::kCar, 1.0, 2.0, 4.5, 1.8, 0.0, 0.5});
    }
    const std::string payload = EncodePayload(frame);
    Json json = Json::parse(payload);
    Json& object = json["objects"][rng() % json["objects"].size()];
    FuzzCase c;
    switch (k % 9) {
      case 0: {
        c.kind = "truncated_json";
        c.bytes = Frame(payload.substr(0, rng() % payload.size()));
        break;
      }
      case 1: {
        c.kind = "garbage";
        std::string junk(1 + rng() % 64, '\0');
        for (char& ch : junk) ch = static_cast<char>(rng() % 256);
        junk[0] = "[!x#\x01"[rng() % 5];  // never a valid frame object start
        c.bytes = Frame(junk);
        break;
      }
      case 2: {
        c.kind = "missing_frame_field";
        json.erase(kFrameKeys[rng() % kFrameKeys.size()]);
        c.bytes = Frame(json.dump());
        break;
      }
      case 3: {
        c.kind = "missing_object_field";
        object.erase(kObjectKeys[rng() % kObjectKeys.size()]);
        c.bytes = Frame(json.dump());
        break;
      }
      case 4: {
        c.kind = "mistyped_field";
        if (rng() % 2 == 0) {
          json[kFrameKeys[rng() % kFrameKeys.size()]] = Json::object({{"v", 1}});
        } else {
          object[kObjectKeys[rng() % kObjectKeys.size()]] = Json::array({1, 2});
        }
        c.bytes = Frame(json.dump());
        break;
      }
      case 5: {
        c.kind = "invalid_utf8";
        std::string broken = payload;
        const size_t at = broken.find("rsu-") + 3;
        broken.insert(at, "\xC3\x28");
        c.bytes = Frame(broken);
        break;
      }
      case 6: {
        c.kind = "out_of_domain";
        switch (rng() % 4) {
          case 0: object["l"] = -1.0 * static_cast<double>(rng() % 5); break;
          case 1: object["conf"] = 1.5; break;
          case 2: json["sim_time_ms"] = -1 - static_cast<int64_t>(rng() % 1000); break;
          default: object["cls"] = "Bicycle"; break;
        }
        c.bytes = Frame(json.dump());
        break;
      }
      case 7: {
        c.kind = "not_an_object";
        const std::array<std::string, 4> roots = {"[]", "42", "\"frame\"", "null"};
        c.bytes = Frame(roots[rng() % roots.size()]);
        break;
      }
      default: {
        c.kind = "oversized_length";
        c.bytes = Frame(payload);
        const uint32_t bogus = kMaxPayloadBytes + 1 + static_cast<uint32_t>(rng() % 1000);
        c.bytes[0] = static_cast<uint8_t>(bogus >> 24);
        c.bytes[1] = static_cast<uint8_t>(bogus >> 16);
        c.bytes[2] = static_cast<uint8_t>(bogus >> 8);
        c.bytes[3] = static_cast<uint8_t>(bogus);
        break;
      }
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace cmm::testing
