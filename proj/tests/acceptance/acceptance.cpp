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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pmse/bench.hpp"
#include "pmse/block.hpp"
#include "pmse/cipher.hpp"
#include "pmse/otp.hpp"
#include "pmse/stats.hpp"
#include "support/golden_vectors.hpp"
#include "support/test_image.hpp"

namespace {

using namespace pmse;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<Byte>(rng());
  return out;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

CipherParams two(const char* a, const char* b, const char* set = "V1") {
  CipherParams p;
  p.pass1 = to_bytes(a);
  p.pass2 = to_bytes(b);
  p.permutation_set = builtin_set(set);
  return p;
}

// Cycles the four variant axes through every combination; passwords, iv and
// divisor are random.
CipherParams variant(std::mt19937_64& rng, unsigned t) {
  CipherParams p;
  p.polynomial = (t & 1) ? Polynomial{Order2Recursive{static_cast<std::int32_t>(uniform(rng, 1, 64))}}
                         : Polynomial{Order1{}};
  p.selector = (t & 2) ? SelectorSource::kX0 : SelectorSource::kYnLowByte;
  p.permutation_set = builtin_set((t & 4) ? "V1C" : "V1");
  p.pass1 = random_bytes(rng, uniform(rng, 1, 32));
  if (t & 8) p.pass2 = random_bytes(rng, uniform(rng, 1, 32));
  for (auto& b : p.iv) b = static_cast<Byte>(rng());
  for (std::size_t k = 14; k <= 18; ++k) p.iv[k] = static_cast<Byte>(uniform(rng, 2, 255));
  return p;
}

Outcome round_trip() {
  constexpr int kCases = 1000;
  constexpr double kMaxSeconds = 10.0;
  std::mt19937_64 rng(1);
  const auto start = std::chrono::steady_clock::now();
  int ok = 0;
  for (unsigned t = 0; t < kCases; ++t) {
    const CipherParams p = variant(rng, t);
    const Bytes msg = random_bytes(rng, uniform(rng, 0, 4096));
    ok += decrypt_stream(p, encrypt_stream(p, msg).data).data == msg;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {ok == kCases && secs < kMaxSeconds, fmt("%d/%d identical in %.2f s", ok, kCases, secs)};
}

Outcome permutations() {
  int failures = 0, checked = 0;
  for (const char* id : {"V1", "V1C"}) {
    const PermutationSet set = builtin_set(id);
    for (const auto& c : set.cases()) {
      for (unsigned b = 0; b < 256; ++b, ++checked)
        failures += inverse(c, forward(c, static_cast<Byte>(b))) != b;
    }
  }
  return {failures == 0, fmt("%d failures over %d byte/case pairs", failures, checked)};
}

Outcome uniformity() {
  const CipherParams p = two("aa", "bb");
  const StreamStats s = basic_stats(keystream(p, 10000));
  const double e = shannon_entropy(keystream(p, 100000));
  const bool pass = s.mean >= 123.0 && s.mean <= 132.0 && s.std >= 70.0 && s.std <= 77.0 && e > 7.99;
  return {pass, fmt("mean %.3f, std %.3f, entropy(100000) %.5f", s.mean, s.std, e)};
}

Outcome image_entropy(const Image& img) {
  const CipherParams p = two("PMSE_encryption", "blocksnet", "V1C");
  const double orig = shannon_entropy(img.pixels);
  const double decon = shannon_entropy(deconstruct_stream(p, img.pixels));
  const double enc = shannon_entropy(encrypt_stream(p, img.pixels).data);
  const bool pass = img.pixels.size() >= 64 * 1024 && orig < 5.0 && enc >= 7.99 && decon > orig;
  return {pass, fmt("%zu bytes, original %.4f, deconstructed %.4f, encrypted %.4f", img.pixels.size(), orig,
                    decon, enc)};
}

Outcome correlations(const Image& img) {
  const char* sets[][2] = {{"aa", "bb"}, {"bonjour", "hello"}, {"mC5JLVGy6", "tpV2gyYcK"}};
  double worst = 0.0;
  std::string detail;
  for (const auto& s : sets) {
    const CipherParams p = two(s[0], s[1], "V1C");
    const double ce = correlation(img.pixels, encrypt_stream(p, img.pixels).data);
    const double ck = correlation(img.pixels, keystream(p, img.pixels.size()));
    worst = std::max({worst, std::abs(ce), std::abs(ck)});
    detail += fmt("%s/%s enc %+.4f key %+.4f; ", s[0], s[1], ce, ck);
  }
  detail += fmt("max |r| %.4f", worst);
  return {worst < 0.01, detail};
}

Outcome otp_parity(const Image& img) {
  const Comparison c = compare(img, two("PMSE_encryption", "blocksnet", "V1C"));
  const double gap = std::abs(c.row("pmse").entropy - c.row("otp").entropy);
  return {gap < 0.005, fmt("pmse %.5f, otp %.5f, gap %.5f", c.row("pmse").entropy, c.row("otp").entropy, gap)};
}

Outcome spectral() {
  const double ratio = spectrum_peak_ratio(spectrum(keystream(two("aa", "bb"), 10000)));
  return {ratio <= kSpectrumFlatnessLimit, fmt("max/median non-DC magnitude %.3f (limit %.1f)", ratio,
                                               kSpectrumFlatnessLimit)};
}

Outcome golden_vectors() {
  const CipherParams p = two("aa", "bb");
  const Bytes ks = keystream(p, 64);
  const Bytes ct = encrypt_stream(p, Bytes{0, 0, 0, 0}).data;
  std::size_t mismatches = 0;
  for (std::size_t k = 0; k < 64; ++k) mismatches += ks[k] != golden::kKeystreamAaBb[k];
  for (std::size_t k = 0; k < 4; ++k) mismatches += ct[k] != golden::kCiphertextZerosV1[k];
  return {mismatches == 0, fmt("%zu of 68 bytes differ from the oracle", mismatches)};
}

Outcome checksums() {
  const std::uint32_t empty = checksum({}).value();
  std::mt19937_64 rng(9);
  int detected = 0;
  constexpr int kBlocks = 100;
  for (unsigned t = 0; t < kBlocks; ++t) {
    const CipherParams p = variant(rng, t);
    const Bytes ct = encrypt_stream(p, random_bytes(rng, uniform(rng, 1, 4096))).data;
    Bytes tampered = ct;
    const std::size_t at = uniform(rng, 0, ct.size() - 1);
    tampered[at] = static_cast<Byte>(tampered[at] ^ uniform(rng, 1, 255));
    detected += checksum(tampered) != checksum(ct);
  }
  return {empty == 10 && detected >= 99, fmt("empty %u, %d/%d tampered blocks detected", empty, detected, kBlocks)};
}

Outcome bench_symmetry() {
  const BenchResult r = bench(two("benchmark", "symmetry"), std::size_t{1} << 20, 5);
  const double ratio = r.ratio();
  return {r.round_trip_ok && ratio >= 0.8 && ratio <= 1.25,
          fmt("encrypt %.2f MB/s, decrypt %.2f MB/s, ratio %.3f", r.encrypt_mb_per_s(), r.decrypt_mb_per_s(),
              ratio)};
}

}  // namespace

int main() {
  const Image img = pmse::testing::synthetic_micrograph(256);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"round-trip identity", round_trip},
      {"permutation exhaustiveness", permutations},
      {"keystream uniformity", uniformity},
      {"image encryption entropy", [&] { return image_entropy(img); }},
      {"correlation bounds", [&] { return correlations(img); }},
      {"one-time-pad parity", [&] { return otp_parity(img); }},
      {"spectral flatness", spectral},
      {"golden vectors", golden_vectors},
      {"checksum tamper detection", checksums},
      {"bench symmetry", bench_symmetry},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
