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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pmse {

using Byte = std::uint8_t;
using Bytes = std::vector<Byte>;
using ByteView = std::span<const Byte>;

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline std::string to_string(ByteView b) { return std::string(b.begin(), b.end()); }

/// Lowercase hex, two digits per byte.
std::string to_hex(ByteView bytes);

/// Accepts upper or lower case; throws Error(kMalformedEncoding) on odd length or
/// a non-hex digit.
Bytes from_hex(std::string_view hex);

// Standard alphabet, padded.
std::string base64_encode(ByteView bytes);
Bytes base64_decode(std::string_view text);

Bytes read_file(const std::string& path);
void write_file(const std::string& path, ByteView bytes);

}  // namespace pmse
