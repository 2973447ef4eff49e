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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "pmse/bytes.hpp"
#include "pmse/permutation.hpp"

namespace pmse {

// PMSE byte-stream cipher.
//
// All arithmetic registers are 32-bit two's-complement words with wraparound
// on overflow. Division truncates toward zero and the remainder takes the sign
// of the dividend, as in C. This is experimental code: it carries no security
// claim and no constant-time guarantee.

/// Yn = x2*i + x1
struct Order1 {
  friend bool operator==(Order1, Order1) = default;
};

/// Yn = x2*i*i + x1*i + Yn_prev / divisor
struct Order2Recursive {
  std::int32_t divisor = 4;
  friend bool operator==(Order2Recursive, Order2Recursive) = default;
};

using Polynomial = std::variant<Order1, Order2Recursive>;

enum class SelectorSource { kYnLowByte, kX0 };

inline constexpr std::size_t kIvSize = 24;
using Iv = std::array<Byte, kIvSize>;

/// Reference iv from the Arduino listing, "1q23df5r8tyb6d9r5t7k6s4e".
/// Only suitable for reproducible demos.
Iv default_iv() noexcept;

Iv iv_from_hex(std::string_view hex);

struct CipherParams {
  Polynomial polynomial = Order1{};
  Bytes pass1;
  std::optional<Bytes> pass2;  // absent: one-password mode
  Iv iv = default_iv();
  PermutationSet permutation_set = builtin_set("V1");
  SelectorSource selector = SelectorSource::kYnLowByte;

  bool one_password() const noexcept { return !pass2.has_value(); }

  /// Throws Error(kInvalidParams) if a password is empty, iv[14..18] < 2,
  /// the Order2 divisor is < 1, or the permutation set is invalid.
  void validate() const;
};

struct KeystreamState {
  std::uint32_t i = 0;
  std::int32_t x0 = 0;
  std::int32_t x1 = 0;
  std::int32_t x2 = 0;
  std::int32_t x3 = 0;
  std::int32_t yn = 0;
  Byte xt = 0;
  std::int32_t x1_prev = 0;

  friend bool operator==(const KeystreamState&, const KeystreamState&) = default;
};

struct KeyOutput {
  Byte key;
  Byte selector;
  friend bool operator==(KeyOutput, KeyOutput) = default;
};

/// Running x_cs fold over a byte sequence: starts at 10, then
/// cs = (cs ^ b) + cs per byte with unsigned 32-bit wraparound.
///
/// Non-cryptographic, and weak: (cs ^ b) + cs == 2*(cs & ~b) + b, so history
/// is shifted out one bit per byte and only the last ~32 bytes matter.
class Checksum {
 public:
  static constexpr std::uint32_t kInitial = 10;

  void update(Byte b) noexcept { cs_ = (cs_ ^ b) + cs_; }
  void update(ByteView bytes) noexcept {
    for (Byte b : bytes) update(b);
  }
  std::uint32_t value() const noexcept { return cs_; }

  friend bool operator==(Checksum, Checksum) = default;

 private:
  std::uint32_t cs_ = kInitial;
};

Checksum checksum(ByteView bytes) noexcept;

KeystreamState init_state(const CipherParams& params);

/// Advances the state by one byte and returns the key byte plus the
/// deconstruction selector. Assumes params already validated.
KeyOutput next_key(KeystreamState& state, const CipherParams& params) noexcept;

struct StreamResult {
  Bytes data;
  Checksum checksum;
};

inline constexpr std::size_t kMaxMessageLength = 0x7FFFFFFF;

/// Both directions fold the ciphertext into the checksum, so encrypting and
/// decrypting the same message report the same value.
StreamResult encrypt_stream(const CipherParams& params, ByteView plaintext);
StreamResult decrypt_stream(const CipherParams& params, ByteView ciphertext);

/// First n key bytes, no data mixing.
Bytes keystream(const CipherParams& params, std::size_t n);

/// Applies only the selector-driven forward permutations (no XOR). This is
/// the "deconstructed" intermediate of encryption.
Bytes deconstruct_stream(const CipherParams& params, ByteView data);

/// Short descriptor of the variant, e.g. "order1/V1/yn-low-byte/two-password".
std::string describe(const CipherParams& params);

std::string_view to_string(SelectorSource s) noexcept;
SelectorSource parse_selector(std::string_view s);

}  // namespace pmse
