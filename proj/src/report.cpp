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

#include "pmse/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace pmse {

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void Report::add(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Report::add(std::string key, double value) { add(std::move(key), format_number(value)); }

void Report::add(std::string key, std::optional<double> value) {
  add(std::move(key), value ? format_number(*value) : std::string("undefined"));
}

void Report::add_count(std::string key, unsigned long long value) {
  add(std::move(key), std::to_string(value));
}

std::optional<std::string> Report::get(std::string_view key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

std::optional<double> Report::get_number(std::string_view key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  try {
    std::size_t used = 0;
    double d = std::stod(*v, &used);
    if (used != v->size()) return std::nullopt;
    return d;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string Report::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + ": " + v + "\n";
  return out;
}

Report Report::parse(std::string_view text) {
  Report r;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    const auto sep = line.find(": ");
    if (sep == std::string::npos) continue;
    r.add(line.substr(0, sep), line.substr(sep + 2));
  }
  return r;
}

}  // namespace pmse
