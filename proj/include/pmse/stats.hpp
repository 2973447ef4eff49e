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
#include <cstdint>
#include <string>
#include <vector>

#include "pmse/bytes.hpp"
#include "pmse/report.hpp"

namespace pmse {

using Histogram = std::array<std::uint64_t, 256>;

struct StreamStats {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;       // sample, n-1 divisor
  double variance = 0.0;  // std^2
  double entropy_bits = 0.0;
  Histogram histogram{};
};

Histogram histogram(ByteView bytes) noexcept;

/// Base-2 Shannon entropy over the 256-bin histogram. An empty input has
/// entropy 0.
double shannon_entropy(ByteView bytes) noexcept;
double entropy_of(const Histogram& h) noexcept;

/// Throws kTooShort below 2 bytes.
StreamStats basic_stats(ByteView bytes);

/// Pearson correlation. Throws kLengthMismatch, kTooShort (< 2) or
/// kZeroVariance when either side is constant.
double correlation(ByteView a, ByteView b);

/// Single-sided amplitude spectrum |FFT(x)/L| over the exact input length,
/// bins 0..L/2 with every bin except DC and (even L) Nyquist doubled.
/// Throws kTooShort below 16 samples.
std::vector<double> spectrum(ByteView bytes);

/// max / median over the non-DC bins. Infinity when the median is zero but
/// some bin is not; 0 for an all-zero spectrum.
double spectrum_peak_ratio(const std::vector<double>& magnitudes);

inline constexpr double kSpectrumFlatnessLimit = 5.0;

Report analyze_report(ByteView bytes);

std::string histogram_csv(const Histogram& h);
std::string spectrum_csv(const std::vector<double>& magnitudes, std::size_t signal_length);

}  // namespace pmse
