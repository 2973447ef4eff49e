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

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmse/bytes.hpp"
#include "pmse/cipher.hpp"
#include "pmse/image.hpp"
#include "pmse/report.hpp"

namespace pmse {

/// n bytes from the OS CSPRNG. Throws kRandomSourceUnavailable.
Bytes generate_pad(std::size_t n);

/// Bytewise XOR; throws kLengthMismatch unless the sizes agree.
Bytes otp_encrypt(ByteView msg, ByteView pad);

struct ComparisonRow {
  std::string name;
  double entropy = 0.0;
  std::optional<double> correlation;  // against the original; undefined for constant inputs
};

struct Comparison {
  std::vector<ComparisonRow> rows;  // original, deconstructed, keystream, pmse, otp
  const ComparisonRow& row(std::string_view name) const;
  Report to_report() const;
};

/// Entropy and correlation-with-original for the original pixels, the
/// deconstructed pixels, the PMSE keystream, the PMSE ciphertext and an OTP
/// ciphertext. A fresh pad is drawn per call. If pad_out is non-null the pad
/// is copied there; otherwise it never leaves this function.
Comparison compare(const Image& image, const CipherParams& params, Bytes* pad_out = nullptr);

}  // namespace pmse
