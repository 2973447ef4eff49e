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

#include "pmse/permutation.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmse/error.hpp"

namespace pmse {

Byte forward(const PermutationCase& c, Byte b) noexcept {
  unsigned out = 0;
  for (unsigned k = 0; k < 8; ++k) out |= ((b >> c.bit_map[k]) & 1u) << k;
  return static_cast<Byte>(out ^ c.xor_mask);
}

Byte inverse(const PermutationCase& c, Byte b) noexcept {
  const unsigned in = b ^ c.xor_mask;
  unsigned out = 0;
  for (unsigned k = 0; k < 8; ++k) out |= ((in >> k) & 1u) << c.bit_map[k];
  return static_cast<Byte>(out);
}

bool is_bijection(const PermutationCase& c) noexcept {
  unsigned seen = 0;
  for (auto src : c.bit_map) {
    if (src > 7) return false;
    seen |= 1u << src;
  }
  return seen == 0xFF;
}

namespace {

// bit_map for a left rotation by r: output bit k takes input bit k - r.
constexpr std::array<std::uint8_t, 8> rotl(unsigned r) {
  std::array<std::uint8_t, 8> m{};
  for (unsigned k = 0; k < 8; ++k) m[k] = static_cast<std::uint8_t>((k + 8 - r) % 8);
  return m;
}

// Adjacent bit-pair swap: ((b & 0x33) << 2) | ((b & 0xCC) >> 2).
constexpr std::array<std::uint8_t, 8> kPairSwap{2, 3, 0, 1, 6, 7, 4, 5};

std::vector<PermutationCase> v1_cases(std::array<Byte, 4> masks) {
  return {
      {rotl(4), masks[0]},
      {rotl(2), masks[1]},
      {kPairSwap, masks[2]},
      {rotl(3), masks[3]},
  };
}

}  // namespace

PermutationSet builtin_set(std::string_view id) {
  if (id == "V1") return PermutationSet("V1", v1_cases({0x00, 0x00, 0x00, 0x00}));
  if (id == "V1C") return PermutationSet("V1C", v1_cases({0xC0, 0x0C, 0xC0, 0x0C}));
  throw Error(ErrorCode::kUnknownSet, std::string(id));
}

std::vector<std::string> validate_set(const PermutationSet& set) {
  std::vector<std::string> violations;
  if (set.size() == 0) violations.emplace_back("set has no cases");
  if (set.size() > kMaxCases) violations.emplace_back("N exceeds 255");
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (!is_bijection(set.cases()[k]))
      violations.push_back("case " + std::to_string(k) + ": not a bijection");
  }
  return violations;
}

std::vector<std::string> set_warnings(const PermutationSet& set) {
  std::vector<std::string> warnings;
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set.cases()[a] == set.cases()[b])
        warnings.push_back("cases " + std::to_string(a) + " and " + std::to_string(b) +
                           " are identical");
    }
  }
  return warnings;
}

std::string format_set(const PermutationSet& set) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (const auto& c : set.cases()) {
    for (int k = 7; k >= 0; --k) {
      out.push_back(static_cast<char>('0' + c.bit_map[k]));
      out.push_back(' ');
    }
    out.push_back(kDigits[c.xor_mask >> 4]);
    out.push_back(kDigits[c.xor_mask & 0x0F]);
    out.push_back('\n');
  }
  return out;
}

PermutationSet parse_set(std::string_view text, std::string id) {
  std::vector<PermutationCase> cases;
  std::istringstream lines{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    auto fail = [&](const char* why) {
      return Error(ErrorCode::kMalformedSet, "line " + std::to_string(line_no) + ": " + why);
    };
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.size() != 9) throw fail("expected 8 bit indices and a mask");

    PermutationCase c;
    for (int k = 0; k < 8; ++k) {
      const std::string& t = tok[k];
      if (t.size() != 1 || t[0] < '0' || t[0] > '7') throw fail("bit index must be 0..7");
      c.bit_map[7 - k] = static_cast<std::uint8_t>(t[0] - '0');
    }
    std::string_view mask = tok[8];
    if (mask.starts_with("0x") || mask.starts_with("0X")) mask.remove_prefix(2);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(mask.data(), mask.data() + mask.size(), value, 16);
    if (mask.empty() || mask.size() > 2 || ec != std::errc() || ptr != mask.data() + mask.size())
      throw fail("mask must be one hex byte");
    c.xor_mask = static_cast<Byte>(value);
    cases.push_back(c);
  }
  return PermutationSet(std::move(id), std::move(cases));
}

PermutationSet resolve_set(std::string_view id_or_path) {
  if (id_or_path == "V1" || id_or_path == "V1C") return builtin_set(id_or_path);
  const std::filesystem::path path(id_or_path);
  if (!std::filesystem::is_regular_file(path)) throw Error(ErrorCode::kUnknownSet, std::string(id_or_path));
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  return parse_set(text.str(), path.stem().string());
}

PermutationTables::PermutationTables(const PermutationSet& set, Direction dir)
    : count_(set.size()), table_(set.size() * 256) {
  for (std::size_t k = 0; k < count_; ++k) {
    const auto& c = set.cases()[k];
    for (unsigned b = 0; b < 256; ++b) {
      table_[k * 256 + b] = dir == Direction::kForward ? forward(c, static_cast<Byte>(b))
                                                       : inverse(c, static_cast<Byte>(b));
    }
  }
}

}  // namespace pmse
