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

#include "pmse/otp.hpp"

#include <sodium.h>

#include "pmse/error.hpp"
#include "pmse/stats.hpp"

namespace pmse {

Bytes generate_pad(std::size_t n) {
  if (sodium_init() < 0) throw Error(ErrorCode::kRandomSourceUnavailable, "libsodium init failed");
  Bytes pad(n);
  if (n > 0) randombytes_buf(pad.data(), n);
  return pad;
}

Bytes otp_encrypt(ByteView msg, ByteView pad) {
  if (msg.size() != pad.size())
    throw Error(ErrorCode::kLengthMismatch, "pad length differs from message length");
  Bytes out(msg.size());
  for (std::size_t k = 0; k < msg.size(); ++k) out[k] = msg[k] ^ pad[k];
  return out;
}

const ComparisonRow& Comparison::row(std::string_view name) const {
  for (const auto& r : rows)
    if (r.name == name) return r;
  throw Error(ErrorCode::kInvalidParams, "no comparison row " + std::string(name));
}

Report Comparison::to_report() const {
  Report rep;
  for (const auto& r : rows) {
    rep.add(r.name + ".entropy", r.entropy);
    if (r.name != "original") rep.add(r.name + ".correlation", r.correlation);
  }
  rep.add("entropy_gap_pmse_otp", std::abs(row("pmse").entropy - row("otp").entropy));
  return rep;
}

namespace {

std::optional<double> correlation_or_undefined(ByteView a, ByteView b) {
  try {
    return correlation(a, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kZeroVariance || e.code() == ErrorCode::kTooShort) return std::nullopt;
    throw;
  }
}

}  // namespace

Comparison compare(const Image& image, const CipherParams& params, Bytes* pad_out) {
  const ByteView original = image.pixels;
  const Bytes deconstructed = deconstruct_stream(params, original);
  const Bytes keys = keystream(params, original.size());
  const Bytes pmse = encrypt_stream(params, original).data;
  Bytes pad = generate_pad(original.size());
  const Bytes otp = otp_encrypt(original, pad);
  if (pad_out) *pad_out = pad;
  sodium_memzero(pad.data(), pad.size());

  Comparison cmp;
  cmp.rows.push_back({"original", shannon_entropy(original), std::nullopt});
  auto add = [&](std::string name, const Bytes& data) {
    cmp.rows.push_back({std::move(name), shannon_entropy(data), correlation_or_undefined(original, data)});
  };
  add("deconstructed", deconstructed);
  add("keystream", keys);
  add("pmse", pmse);
  add("otp", otp);
  return cmp;
}

}  // namespace pmse
