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

#include "cmm/common/config_file.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "absl/strings/str_cat.h"

namespace cmm {
namespace {

std::string Trim(const std::string& s) {
  const auto begin = std::find_if_not(s.begin(), s.end(), ::isspace);
  const auto end = std::find_if_not(s.rbegin(), s.rend(), ::isspace).base();
  return begin < end ? std::string(begin, end) : std::string();
}

// The INI reader does not strip trailing comments or quotes.
std::string CleanValue(const std::string& raw) {
  std::string value = raw;
  const size_t hash = value.find('#');
  if (hash != std::string::npos) value.resize(hash);
  value = Trim(value);
  if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
    value = value.substr(1, value.size() - 2);
  }
  return value;
}

}  // namespace

absl::StatusOr<ConfigFile> ConfigFile::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto parsed = FromString(buffer.str());
  if (!parsed.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", parsed.status().message()));
  }
  return parsed;
}

absl::StatusOr<ConfigFile> ConfigFile::FromString(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("line ", e.line(), ": ", e.message()));
  }
  return ConfigFile(std::move(tree));
}

bool ConfigFile::Has(const std::string& key) const {
  return tree_.get_optional<std::string>(key).has_value();
}

bool ConfigFile::HasSection(const std::string& section) const {
  return tree_.get_child_optional(section).has_value();
}

std::string ConfigFile::GetString(const std::string& key,
                                  const std::string& default_value) const {
  const auto raw = tree_.get_optional<std::string>(key);
  return raw ? CleanValue(*raw) : default_value;
}

absl::StatusOr<double> ConfigFile::GetDouble(const std::string& key,
                                             double default_value) const {
  if (!Has(key)) return default_value;
  const std::string value = GetString(key, "");
  double out = 0.0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(key, ": expected a number, got '", value, "'"));
  }
  return out;
}

absl::StatusOr<int64_t> ConfigFile::GetInt(const std::string& key,
                                           int64_t default_value) const {
  if (!Has(key)) return default_value;
  const std::string value = GetString(key, "");
  int64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat(key, ": expected an integer, got '", value, "'"));
  }
  return out;
}

absl::StatusOr<bool> ConfigFile::GetBool(const std::string& key,
                                         bool default_value) const {
  if (!Has(key)) return default_value;
  const std::string value = GetString(key, "");
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  return absl::InvalidArgumentError(
      absl::StrCat(key, ": expected true/false, got '", value, "'"));
}

std::vector<std::string> ConfigFile::SectionsWithPrefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [name, child] : tree_) {
    if (name.rfind(prefix, 0) == 0 && !child.empty()) out.push_back(name);
  }
  return out;
}

void ConfigFile::Set(const std::string& key, const std::string& value) {
  tree_.put(key, value);
}

std::vector<std::pair<std::string, std::string>> ConfigFile::Entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [section, child] : tree_) {
    for (const auto& entry : child) {
      const std::string key = section + "." + entry.first;
      out.emplace_back(key, GetString(key, ""));
    }
  }
  return out;
}

}  // namespace cmm
