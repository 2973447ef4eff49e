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

#include "pmse/cipher.hpp"

#include <string>

#include "pmse/error.hpp"

namespace pmse {

namespace {

constexpr std::uint32_t bits(std::int32_t v) noexcept { return static_cast<std::uint32_t>(v); }
constexpr std::int32_t word(std::uint32_t u) noexcept { return static_cast<std::int32_t>(u); }

struct PolynomialStep {
  const KeystreamState& s;

  std::int32_t operator()(Order1) const noexcept {
    return word(bits(s.x2) * s.i + bits(s.x1));
  }
  std::int32_t operator()(Order2Recursive p) const noexcept {
    const std::int32_t carried = s.yn / p.divisor;  // truncates toward zero
    return word(bits(s.x2) * s.i * s.i + bits(s.x1) * s.i + bits(carried));
  }
};

void check_length(std::size_t n) {
  if (n > kMaxMessageLength) throw Error(ErrorCode::kInvalidParams, "message longer than 2^31-1 bytes");
}

template <typename Mix>
StreamResult run_stream(const CipherParams& params, ByteView input,
                        PermutationTables::Direction dir, Mix mix) {
  check_length(input.size());
  KeystreamState state = init_state(params);
  const PermutationTables tables(params.permutation_set, dir);
  const std::size_t cases = tables.size();

  StreamResult result;
  result.data.resize(input.size());
  for (std::size_t k = 0; k < input.size(); ++k) {
    const KeyOutput out = next_key(state, params);
    result.data[k] = mix(tables, out.selector % cases, out.key, input[k], result.checksum);
  }
  return result;
}

}  // namespace

Iv default_iv() noexcept {
  constexpr std::string_view kText = "1q23df5r8tyb6d9r5t7k6s4e";
  Iv iv{};
  for (std::size_t k = 0; k < kIvSize; ++k) iv[k] = static_cast<Byte>(kText[k]);
  return iv;
}

Iv iv_from_hex(std::string_view hex) {
  if (hex.size() != 2 * kIvSize)
    throw Error(ErrorCode::kInvalidParams, "iv must be 48 hex characters");
  Bytes raw;
  try {
    raw = from_hex(hex);
  } catch (const Error&) {
    throw Error(ErrorCode::kInvalidParams, "iv is not valid hex");
  }
  Iv iv{};
  std::copy(raw.begin(), raw.end(), iv.begin());
  return iv;
}

void CipherParams::validate() const {
  if (pass1.empty()) throw Error(ErrorCode::kInvalidParams, "pass1 is empty");
  if (pass2 && pass2->empty()) throw Error(ErrorCode::kInvalidParams, "pass2 is empty");
  for (std::size_t k = 14; k <= 18; ++k) {
    if (iv[k] < 2)
      throw Error(ErrorCode::kInvalidParams, "iv[" + std::to_string(k) + "] must be >= 2");
  }
  if (const auto* p = std::get_if<Order2Recursive>(&polynomial); p && p->divisor < 1)
    throw Error(ErrorCode::kInvalidParams, "divisor must be >= 1");
  if (auto violations = validate_set(permutation_set); !violations.empty())
    throw Error(ErrorCode::kInvalidParams, "permutation set " + permutation_set.id() + ": " + violations.front());
}

KeystreamState init_state(const CipherParams& params) {
  params.validate();
  KeystreamState s;
  s.x0 = params.iv[0];
  s.x1 = params.iv[1];
  s.x2 = params.iv[2];
  s.x3 = params.iv[3];
  s.xt = params.iv[7];
  s.yn = params.iv[10];
  s.x1_prev = params.iv[1];
  return s;
}

KeyOutput next_key(KeystreamState& s, const CipherParams& params) noexcept {
  const std::uint32_t i = s.i;
  s.yn = std::visit(PolynomialStep{s}, params.polynomial);

  const std::uint32_t y = bits(s.yn);
  const Byte xd = static_cast<Byte>(y & 0xFF);
  s.x0 = word(((y >> 24) & 0xFF) ^ ((y >> 16) & 0xFF) ^ ((y >> 8) & 0xFF) ^ xd);

  const Bytes& p1 = params.pass1;
  s.x1 = p1[i % p1.size()];
  if (params.pass2) {
    const Bytes& p2 = *params.pass2;
    s.x2 = p2[(static_cast<std::uint64_t>(i) + bits(s.x1)) % p2.size()];
  } else {
    s.x2 = s.x1_prev;
  }
  s.x3 = word(i * bits(s.x1) - bits(s.x3) * bits(s.x2)) % 255;
  s.xt = static_cast<Byte>((s.xt ^ bits(s.x0) ^ bits(s.x1) ^ bits(s.x2) ^ bits(s.x3)) & 0xFF);

  if (s.xt == 0) {
    // May leave xt at 0 when i is a multiple of iv[14]; emitted as-is.
    const Iv& iv = params.iv;
    s.xt = static_cast<Byte>(i % iv[14]);
    s.x0 = word(i % iv[15]);
    s.x1 = word(i % iv[16]);
    s.x2 = word(i % iv[17]);
    s.x3 = word(i % iv[18]);
  }

  s.x1_prev = s.x1;
  s.i = i + 1;

  const Byte selector =
      params.selector == SelectorSource::kYnLowByte ? xd : static_cast<Byte>(bits(s.x0) & 0xFF);
  return {s.xt, selector};
}

Checksum checksum(ByteView bytes) noexcept {
  Checksum cs;
  cs.update(bytes);
  return cs;
}

StreamResult encrypt_stream(const CipherParams& params, ByteView plaintext) {
  return run_stream(params, plaintext, PermutationTables::Direction::kForward,
                    [](const PermutationTables& t, std::size_t c, Byte key, Byte d, Checksum& cs) {
                      const Byte out = t.apply(c, d) ^ key;
                      cs.update(out);
                      return out;
                    });
}

StreamResult decrypt_stream(const CipherParams& params, ByteView ciphertext) {
  return run_stream(params, ciphertext, PermutationTables::Direction::kInverse,
                    [](const PermutationTables& t, std::size_t c, Byte key, Byte in, Checksum& cs) {
                      cs.update(in);
                      return t.apply(c, in ^ key);
                    });
}

Bytes deconstruct_stream(const CipherParams& params, ByteView data) {
  return run_stream(params, data, PermutationTables::Direction::kForward,
                    [](const PermutationTables& t, std::size_t c, Byte, Byte d, Checksum&) {
                      return t.apply(c, d);
                    })
      .data;
}

Bytes keystream(const CipherParams& params, std::size_t n) {
  check_length(n);
  KeystreamState state = init_state(params);
  Bytes out(n);
  for (auto& b : out) b = next_key(state, params).key;
  return out;
}

std::string_view to_string(SelectorSource s) noexcept {
  return s == SelectorSource::kYnLowByte ? "yn-low-byte" : "x0";
}

SelectorSource parse_selector(std::string_view s) {
  if (s == "yn-low-byte" || s == "yn") return SelectorSource::kYnLowByte;
  if (s == "x0") return SelectorSource::kX0;
  throw Error(ErrorCode::kInvalidParams, "unknown selector source: " + std::string(s));
}

std::string describe(const CipherParams& params) {
  std::string out;
  if (const auto* p = std::get_if<Order2Recursive>(&params.polynomial))
    out = "order2/div" + std::to_string(p->divisor);
  else
    out = "order1";
  out += "/" + params.permutation_set.id();
  out += "/" + std::string(to_string(params.selector));
  out += params.one_password() ? "/one-password" : "/two-password";
  return out;
}

}  // namespace pmse
