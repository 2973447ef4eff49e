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

#include "pmse/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "pmse/error.hpp"
#include "pmse/otp.hpp"
#include "support/generators.hpp"

namespace pmse {
namespace {

Bytes ramp() {
  Bytes r(256);
  for (unsigned k = 0; k < 256; ++k) r[k] = static_cast<Byte>(k);
  return r;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no pmse::Error thrown";
  return ErrorCode::kIoFailure;
}

// O(n^2) DFT, the independent route for the FFTW-backed spectrum.
std::vector<double> naive_spectrum(ByteView x) {
  const std::size_t n = x.size();
  std::vector<double> mag(n / 2 + 1);
  for (std::size_t k = 0; k < mag.size(); ++k) {
    std::complex<double> acc;
    for (std::size_t t = 0; t < n; ++t)
      acc += static_cast<double>(x[t]) *
             std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * t) / static_cast<double>(n));
    mag[k] = std::abs(acc) / static_cast<double>(n);
    if (k != 0 && !(n % 2 == 0 && k == n / 2)) mag[k] *= 2.0;
  }
  return mag;
}

TEST(BasicStats, Ramp) {
  const StreamStats s = basic_stats(ramp());
  EXPECT_DOUBLE_EQ(s.mean, 127.5);
  EXPECT_NEAR(s.entropy_bits, 8.0, 1e-12);
  // Sample variance of 0..255 is 256*257/12.
  EXPECT_NEAR(s.variance, 256.0 * 257.0 / 12.0, 1e-9);
  for (auto c : s.histogram) EXPECT_EQ(c, 1u);
}

TEST(BasicStats, Constant) {
  const StreamStats s = basic_stats(Bytes(1000, 0x41));
  EXPECT_DOUBLE_EQ(s.mean, 65.0);
  EXPECT_DOUBLE_EQ(s.std, 0.0);
  EXPECT_DOUBLE_EQ(s.entropy_bits, 0.0);
}

TEST(BasicStats, TooShort) {
  EXPECT_EQ(code_of([] { basic_stats(Bytes{1}); }), ErrorCode::kTooShort);
}

TEST(BasicStats, CrossChecks) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Bytes data = testing::random_bytes(rng, testing::uniform(rng, 2, 5000));
    const StreamStats s = basic_stats(data);
    EXPECT_NEAR(s.variance, s.std * s.std, 1e-9 * std::max(1.0, s.variance));
    std::uint64_t total = 0;
    for (auto c : s.histogram) total += c;
    EXPECT_EQ(total, data.size());
    EXPECT_GE(s.entropy_bits, 0.0);
    EXPECT_LE(s.entropy_bits, 8.0);
  }
}

TEST(BasicStats, WelfordAgrees) {
  std::mt19937_64 rng(4);
  const Bytes data = testing::random_bytes(rng, 100000);
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (Byte b : data) {
    ++n;
    const double d = b - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (b - mean);
  }
  const StreamStats s = basic_stats(data);
  EXPECT_NEAR(s.mean, mean, 1e-9 * mean);
  EXPECT_NEAR(s.variance, m2 / static_cast<double>(n - 1), 1e-9 * s.variance);
}

TEST(Correlation, IdentityAndNegation) {
  std::mt19937_64 rng(1);
  const Bytes v = testing::random_bytes(rng, 1000);
  Bytes neg(v.size());
  std::transform(v.begin(), v.end(), neg.begin(), [](Byte b) { return static_cast<Byte>(255 - b); });
  EXPECT_NEAR(correlation(v, v), 1.0, 1e-12);
  EXPECT_NEAR(correlation(v, neg), -1.0, 1e-12);
}

TEST(Correlation, Errors) {
  EXPECT_EQ(code_of([] { correlation(Bytes{1, 2, 3}, Bytes{1, 2}); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([] { correlation(Bytes{1, 2, 3}, Bytes{7, 7, 7}); }), ErrorCode::kZeroVariance);
  EXPECT_EQ(code_of([] { correlation(Bytes{1}, Bytes{2}); }), ErrorCode::kTooShort);
}

TEST(Correlation, SymmetricAndAffineInvariant) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    Bytes a = testing::random_bytes(rng, 500), b(500);
    for (auto& x : b) x = static_cast<Byte>(testing::uniform(rng, 0, 60));
    const double r = correlation(a, b);
    EXPECT_NEAR(correlation(b, a), r, 1e-12);
    const int alpha = static_cast<int>(testing::uniform(rng, 1, 4));
    const int beta = static_cast<int>(testing::uniform(rng, 0, 15));
    Bytes up(b.size()), down(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
      up[k] = static_cast<Byte>(alpha * b[k] + beta);
      down[k] = static_cast<Byte>(255 - alpha * b[k]);
    }
    EXPECT_NEAR(correlation(a, up), r, 1e-9);
    EXPECT_NEAR(correlation(a, down), -r, 1e-9);
  }
}

TEST(Entropy, Basics) {
  EXPECT_DOUBLE_EQ(shannon_entropy(Bytes{0x42}), 0.0);
  EXPECT_DOUBLE_EQ(shannon_entropy({}), 0.0);
  EXPECT_NEAR(shannon_entropy(Bytes{0, 1, 0, 1}), 1.0, 1e-12);
}

TEST(Entropy, PermutationInvariantAndMaximalWhenFlat) {
  std::mt19937_64 rng(8);
  Bytes data = testing::random_bytes(rng, 4096);
  const double e = shannon_entropy(data);
  std::shuffle(data.begin(), data.end(), rng);
  EXPECT_DOUBLE_EQ(shannon_entropy(data), e);
  EXPECT_LT(e, 8.0);

  Bytes flat;
  for (int rep = 0; rep < 16; ++rep) {
    const Bytes r = ramp();
    flat.insert(flat.end(), r.begin(), r.end());
  }
  EXPECT_NEAR(shannon_entropy(flat), 8.0, 1e-12);
}

TEST(Entropy, OsRandomAbove799) {
  EXPECT_GT(shannon_entropy(generate_pad(64 * 1024)), 7.99);
}

TEST(Spectrum, MatchesNaiveDft) {
  std::mt19937_64 rng(13);
  for (std::size_t n : {16u, 17u, 64u, 100u}) {
    const Bytes x = testing::random_bytes(rng, n);
    const auto fast = spectrum(x);
    const auto slow = naive_spectrum(x);
    ASSERT_EQ(fast.size(), slow.size());
    for (std::size_t k = 0; k < fast.size(); ++k) EXPECT_NEAR(fast[k], slow[k], 1e-9) << n << ":" << k;
  }
}

TEST(Spectrum, ConstantHasOnlyDc) {
  const auto mag = spectrum(Bytes(1000, 77));
  EXPECT_NEAR(mag[0], 77.0, 1e-9);
  for (std::size_t k = 1; k < mag.size(); ++k) EXPECT_NEAR(mag[k], 0.0, 1e-9);
  EXPECT_EQ(spectrum_peak_ratio(mag) <= 1e-6 || std::isinf(spectrum_peak_ratio(mag)), true);
}

TEST(Spectrum, AlternatingPeaksAtNyquist) {
  Bytes x(1024);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = k % 2 ? 255 : 0;
  const auto mag = spectrum(x);
  const auto peak = std::max_element(mag.begin() + 1, mag.end());
  EXPECT_EQ(static_cast<std::size_t>(peak - mag.begin()), mag.size() - 1);
  EXPECT_NEAR(*peak, 127.5, 1e-9);
}

TEST(Spectrum, TooShort) {
  EXPECT_EQ(code_of([] { spectrum(Bytes(15, 1)); }), ErrorCode::kTooShort);
}

TEST(Spectrum, PeakRatio) {
  EXPECT_DOUBLE_EQ(spectrum_peak_ratio({9.0, 1.0, 2.0, 3.0}), 1.5);
  EXPECT_DOUBLE_EQ(spectrum_peak_ratio({9.0, 1.0, 2.0, 3.0, 10.0}), 4.0);
  EXPECT_DOUBLE_EQ(spectrum_peak_ratio({9.0, 0.0, 0.0}), 0.0);
}

TEST(Report, AnalyzeKeys) {
  std::mt19937_64 rng(14);
  const Report r = analyze_report(testing::random_bytes(rng, 4096));
  for (const char* key : {"bytes", "mean", "std", "variance", "entropy_bits", "min", "max",
                          "spectrum_peak_ratio", "spectrum_flat"})
    EXPECT_TRUE(r.get(key).has_value()) << key;
  EXPECT_EQ(r.get_number("bytes"), 4096.0);
  const Report back = Report::parse(r.to_text());
  EXPECT_EQ(back.entries(), r.entries());
}

TEST(Report, Csv) {
  Histogram h{};
  h[3] = 7;
  const std::string csv = histogram_csv(h);
  EXPECT_EQ(csv.substr(0, 12), "value,count\n");
  EXPECT_NE(csv.find("\n3,7\n"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 257);
  const std::string sp = spectrum_csv({1.0, 0.5}, 2);
  EXPECT_EQ(sp, "bin,frequency,magnitude\n0,0,1\n1,0.5,0.5\n");
}

}  // namespace
}  // namespace pmse
