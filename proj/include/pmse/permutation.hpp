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

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pmse/bytes.hpp"

namespace pmse {

/// One reversible byte transform: a bit permutation followed by an XOR mask.
/// bit_map[k] is the source bit that feeds output bit k.
struct PermutationCase {
  std::array<std::uint8_t, 8> bit_map{0, 1, 2, 3, 4, 5, 6, 7};
  Byte xor_mask = 0;

  friend bool operator==(const PermutationCase&, const PermutationCase&) = default;
};

Byte forward(const PermutationCase& c, Byte b) noexcept;
Byte inverse(const PermutationCase& c, Byte b) noexcept;

bool is_bijection(const PermutationCase& c) noexcept;

inline constexpr std::size_t kMaxCases = 255;

/// An ordered list of cases; the keystream selector picks case (s mod size()).
/// Immutable once built.
class PermutationSet {
 public:
  PermutationSet() = default;
  PermutationSet(std::string id, std::vector<PermutationCase> cases)
      : id_(std::move(id)), cases_(std::move(cases)) {}

  const std::string& id() const noexcept { return id_; }
  const std::vector<PermutationCase>& cases() const noexcept { return cases_; }
  std::size_t size() const noexcept { return cases_.size(); }
  const PermutationCase& operator[](std::size_t k) const { return cases_.at(k); }

  friend bool operator==(const PermutationSet&, const PermutationSet&) = default;

 private:
  std::string id_;
  std::vector<PermutationCase> cases_;
};

/// "V1": the four Arduino shuffles, no masks. "V1C": same shuffles with the
/// alternating 0xC0/0x0C complement masks. Anything else throws kUnknownSet.
PermutationSet builtin_set(std::string_view id);

/// Empty result means valid. Never throws.
std::vector<std::string> validate_set(const PermutationSet& set);

/// Non-fatal findings, e.g. two cases that act identically on every byte.
std::vector<std::string> set_warnings(const PermutationSet& set);

// Text form, one case per line: "p7 p6 p5 p4 p3 p2 p1 p0 mask_hex".
// Blank lines and lines starting with '#' are ignored. See docs/formats.md.
std::string format_set(const PermutationSet& set);
PermutationSet parse_set(std::string_view text, std::string id);

/// Resolves a builtin id, or loads a set file when the id names a path.
PermutationSet resolve_set(std::string_view id_or_path);

/// 256-entry lookup tables for one direction across every case of a set.
class PermutationTables {
 public:
  enum class Direction { kForward, kInverse };

  PermutationTables(const PermutationSet& set, Direction dir);

  std::size_t size() const noexcept { return count_; }
  Byte apply(std::size_t case_index, Byte b) const noexcept {
    return table_[case_index * 256 + b];
  }

 private:
  std::size_t count_;
  std::vector<Byte> table_;
};

}  // namespace pmse
