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

#ifndef CMM_COMMON_TEXT_FORMAT_H_
#define CMM_COMMON_TEXT_FORMAT_H_

#include <string>

namespace cmm {

// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace cmm

#endif  // CMM_COMMON_TEXT_FORMAT_H_
