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

#include "cmm/scenario/types.h"

#include <algorithm>
#include <string>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"

namespace cmm {

std::string_view AgentClassName(AgentClass cls) {
  switch (cls) {
    case AgentClass::kCar:
      return "Car";
    case AgentClass::kTruck:
      return "Truck";
    case AgentClass::kPedestrian:
      return "Pedestrian";
  }
  return "Unknown";
}

absl::StatusOr<AgentClass> ParseAgentClass(std::string_view name) {
  const std::string lower = absl::AsciiStrToLower(std::string(name));
  if (lower == "car") return AgentClass::kCar;
  if (lower == "truck") return AgentClass::kTruck;
  if (lower == "pedestrian") return AgentClass::kPedestrian;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown object class '", std::string(name), "'"));
}

std::string_view ApproachName(Approach approach) {
  switch (approach) {
    case Approach::kEastbound:
      return "eb";
    case Approach::kWestbound:
      return "wb";
    case Approach::kNorthbound:
      return "nb";
    case Approach::kSouthbound:
      return "sb";
  }
  return "?";
}

absl::StatusOr<Approach> ParseApproach(std::string_view name) {
  const std::string lower = absl::AsciiStrToLower(std::string(name));
  if (lower == "eb" || lower == "eastbound") return Approach::kEastbound;
  if (lower == "wb" || lower == "westbound") return Approach::kWestbound;
  if (lower == "nb" || lower == "northbound") return Approach::kNorthbound;
  if (lower == "sb" || lower == "southbound") return Approach::kSouthbound;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown approach '", std::string(name), "'"));
}

absl::StatusOr<ControlMode> ParseControlMode(std::string_view name) {
  const std::string lower = absl::AsciiStrToLower(std::string(name));
  if (lower == "idm") return ControlMode::kIdm;
  if (lower == "scripted") return ControlMode::kScripted;
  if (lower == "external" || lower == "cacc") return ControlMode::kExternal;
  if (lower == "walker") return ControlMode::kWalker;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown control mode '", std::string(name), "'"));
}

Dimensions DefaultDimensions(AgentClass cls) {
  switch (cls) {
    case AgentClass::kCar:
      return {4.5, 1.8, 1.5};
    case AgentClass::kTruck:
      return {8.0, 2.5, 3.5};
    case AgentClass::kPedestrian:
      return {0.6, 0.6, 1.75};
  }
  return {};
}

const AgentState* WorldState::Find(int id) const {
  const auto it = std::lower_bound(
      agents.begin(), agents.end(), id,
      [](const AgentState& a, int value) { return a.id < value; });
  return (it != agents.end() && it->id == id) ? &*it : nullptr;
}

}  // namespace cmm
