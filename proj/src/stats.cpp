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

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <memory>
#include <mutex>

#include "pmse/error.hpp"

namespace pmse {

Histogram histogram(ByteView bytes) noexcept {
  Histogram h{};
  for (Byte b : bytes) ++h[b];
  return h;
}

double entropy_of(const Histogram& h) noexcept {
  std::uint64_t n = 0;
  for (auto c : h) n += c;
  if (n == 0) return 0.0;
  double e = 0.0;
  for (auto c : h) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(n);
    e -= p * std::log2(p);
  }
  return e;
}

double shannon_entropy(ByteView bytes) noexcept { return entropy_of(histogram(bytes)); }

StreamStats basic_stats(ByteView bytes) {
  if (bytes.size() < 2) throw Error(ErrorCode::kTooShort, "need at least 2 bytes");
  StreamStats s;
  s.count = bytes.size();
  s.histogram = histogram(bytes);

  // Two passes: exact mean first, then centred sum of squares.
  double sum = 0.0;
  for (Byte b : bytes) sum += b;
  s.mean = sum / static_cast<double>(s.count);
  double ss = 0.0;
  for (Byte b : bytes) {
    const double d = b - s.mean;
    ss += d * d;
  }
  s.variance = ss / static_cast<double>(s.count - 1);
  s.std = std::sqrt(s.variance);
  s.entropy_bits = entropy_of(s.histogram);
  return s;
}

double correlation(ByteView a, ByteView b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kLengthMismatch, "correlation inputs differ in length");
  if (a.size() < 2) throw Error(ErrorCode::kTooShort, "need at least 2 samples");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ma += a[k];
    mb += b[k];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double da = a[k] - ma, db = b[k] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) throw Error(ErrorCode::kZeroVariance, "constant input");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

}  // namespace

std::vector<double> spectrum(ByteView bytes) {
  if (bytes.size() < 16) throw Error(ErrorCode::kTooShort, "spectrum needs at least 16 samples");
  const std::size_t n = bytes.size();
  const std::size_t bins = n / 2 + 1;

  std::vector<double> in(bytes.begin(), bytes.end());
  std::vector<std::complex<double>> out(bins);
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE));
  }
  if (!plan) throw Error(ErrorCode::kTooShort, "fftw could not plan a transform");
  fftw_execute(plan.get());

  std::vector<double> mag(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    mag[k] = std::abs(out[k]) / static_cast<double>(n);
    const bool nyquist = (n % 2 == 0) && k == bins - 1;
    if (k != 0 && !nyquist) mag[k] *= 2.0;
  }
  return mag;
}

double spectrum_peak_ratio(const std::vector<double>& magnitudes) {
  if (magnitudes.size() < 2) return 0.0;
  std::vector<double> ac(magnitudes.begin() + 1, magnitudes.end());
  const double peak = *std::max_element(ac.begin(), ac.end());
  const auto mid = ac.begin() + static_cast<std::ptrdiff_t>(ac.size() / 2);
  std::nth_element(ac.begin(), mid, ac.end());
  double median = *mid;
  if (ac.size() % 2 == 0) {
    median = (median + *std::max_element(ac.begin(), mid)) / 2.0;
  }
  if (median == 0.0) return peak == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return peak / median;
}

Report analyze_report(ByteView bytes) {
  const StreamStats s = basic_stats(bytes);
  Report r;
  r.add_count("bytes", s.count);
  r.add("mean", s.mean);
  r.add("std", s.std);
  r.add("variance", s.variance);
  r.add("entropy_bits", s.entropy_bits);
  const auto [lo, hi] = std::minmax_element(bytes.begin(), bytes.end());
  r.add_count("min", *lo);
  r.add_count("max", *hi);
  if (bytes.size() >= 16) {
    const double ratio = spectrum_peak_ratio(spectrum(bytes));
    r.add("spectrum_peak_ratio", ratio);
    r.add("spectrum_flat", ratio <= kSpectrumFlatnessLimit ? std::string("yes") : std::string("no"));
  }
  return r;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "value,count\n";
  for (std::size_t v = 0; v < h.size(); ++v) out += std::to_string(v) + "," + std::to_string(h[v]) + "\n";
  return out;
}

std::string spectrum_csv(const std::vector<double>& magnitudes, std::size_t signal_length) {
  std::string out = "bin,frequency,magnitude\n";
  char buf[96];
  for (std::size_t k = 0; k < magnitudes.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g\n", k,
                  static_cast<double>(k) / static_cast<double>(signal_length), magnitudes[k]);
    out += buf;
  }
  return out;
}

}  // namespace pmse
