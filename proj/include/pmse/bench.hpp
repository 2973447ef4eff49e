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

#include <cstddef>

#include "pmse/cipher.hpp"
#include "pmse/report.hpp"

namespace pmse {

struct BenchResult {
  std::size_t bytes = 0;
  int runs = 0;
  double encrypt_seconds = 0.0;  // median
  double decrypt_seconds = 0.0;  // median
  bool round_trip_ok = false;

  double encrypt_mb_per_s() const noexcept;
  double decrypt_mb_per_s() const noexcept;
  double ratio() const noexcept { return decrypt_seconds / encrypt_seconds; }
  Report to_report() const;
};

/// Times encrypt_stream and decrypt_stream over `bytes` pseudo-random bytes,
/// alternating the two so drift hits both equally, after one warm-up pass.
/// Single-threaded.
BenchResult bench(const CipherParams& params, std::size_t bytes = 1 << 20, int runs = 5);

}  // namespace pmse
