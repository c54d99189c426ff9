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

#ifndef CMM_COMMON_STATUS_MACROS_H_
#define CMM_COMMON_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define CMM_STATUS_CONCAT_INNER_(x, y) x##y
#define CMM_STATUS_CONCAT_(x, y) CMM_STATUS_CONCAT_INNER_(x, y)

#define CMM_RETURN_IF_ERROR(expr)                  \
  do {                                             \
    const ::absl::Status cmm_status_ = (expr);     \
    if (!cmm_status_.ok()) return cmm_status_;     \
  } while (0)

#define CMM_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                               \
  if (!statusor.ok()) return statusor.status();          \
  lhs = std::move(statusor).value()

// Usage: CMM_ASSIGN_OR_RETURN(auto value, FunctionReturningStatusOr());
#define CMM_ASSIGN_OR_RETURN(lhs, rexpr) \
  CMM_ASSIGN_OR_RETURN_IMPL_(            \
      CMM_STATUS_CONCAT_(cmm_statusor_, __LINE__), lhs, rexpr)

#endif  // CMM_COMMON_STATUS_MACROS_H_
