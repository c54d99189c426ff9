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

#ifndef CMM_COMMON_CONFIG_FILE_H_
#define CMM_COMMON_CONFIG_FILE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "absl/status/statusor.h"

namespace cmm {

// Read-only view of an INI/TOML-style file:
//
//   # comment
//   [section]
//   key = value
//
// Keys are addressed as "section.key". Getters return the default when the
// key is absent and an InvalidArgument error when the value does not parse.
class ConfigFile {
 public:
  ConfigFile() = default;

  static absl::StatusOr<ConfigFile> FromFile(const std::string& path);
  static absl::StatusOr<ConfigFile> FromString(const std::string& text);

  bool Has(const std::string& key) const;
  bool HasSection(const std::string& section) const;

  absl::StatusOr<double> GetDouble(const std::string& key,
                                   double default_value) const;
  absl::StatusOr<int64_t> GetInt(const std::string& key,
                                 int64_t default_value) const;
  absl::StatusOr<bool> GetBool(const std::string& key,
                               bool default_value) const;
  std::string GetString(const std::string& key,
                        const std::string& default_value) const;

  // Names of all sections starting with `prefix`, in file order.
  std::vector<std::string> SectionsWithPrefix(const std::string& prefix) const;

  // Adds or replaces "section.key".
  void Set(const std::string& key, const std::string& value);

  // Every "section.key" with its cleaned value, in file order.
  std::vector<std::pair<std::string, std::string>> Entries() const;

 private:
  explicit ConfigFile(boost::property_tree::ptree tree)
      : tree_(std::move(tree)) {}

  boost::property_tree::ptree tree_;
};

}  // namespace cmm

#endif  // CMM_COMMON_CONFIG_FILE_H_
