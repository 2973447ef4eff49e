// Copyright 2026 The PMSE Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pmse {

/// Ordered "key: value" document shared by the analyze and compare-otp
/// reports. Keys are unique; values never contain newlines.
class Report {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void add(std::string key, std::optional<double> value);  // nullopt -> "undefined"
  void add_count(std::string key, unsigned long long value);

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }
  std::optional<std::string> get(std::string_view key) const;
  std::optional<double> get_number(std::string_view key) const;

  std::string to_text() const;
  static Report parse(std::string_view text);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace pmse
