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

#include "pmse/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <vector>

namespace pmse {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

template <typename F>
double time_seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

double BenchResult::encrypt_mb_per_s() const noexcept {
  return static_cast<double>(bytes) / (1024.0 * 1024.0) / encrypt_seconds;
}

double BenchResult::decrypt_mb_per_s() const noexcept {
  return static_cast<double>(bytes) / (1024.0 * 1024.0) / decrypt_seconds;
}

Report BenchResult::to_report() const {
  Report r;
  r.add_count("bytes", bytes);
  r.add_count("runs", static_cast<unsigned long long>(runs));
  r.add("encrypt_seconds", encrypt_seconds);
  r.add("decrypt_seconds", decrypt_seconds);
  r.add("encrypt_mb_s", encrypt_mb_per_s());
  r.add("decrypt_mb_s", decrypt_mb_per_s());
  r.add("decrypt_encrypt_ratio", ratio());
  r.add("round_trip", round_trip_ok ? std::string("ok") : std::string("FAILED"));
  return r;
}

BenchResult bench(const CipherParams& params, std::size_t bytes, int runs) {
  runs = std::max(runs, 1);
  Bytes message(bytes);
  std::mt19937_64 rng(0x504D5345);
  for (auto& b : message) b = static_cast<Byte>(rng());

  BenchResult result;
  result.bytes = bytes;
  result.runs = runs;

  StreamResult enc = encrypt_stream(params, message);
  StreamResult dec = decrypt_stream(params, enc.data);

  std::vector<double> enc_t, dec_t;
  for (int r = 0; r < runs; ++r) {
    enc_t.push_back(time_seconds([&] { enc = encrypt_stream(params, message); }));
    dec_t.push_back(time_seconds([&] { dec = decrypt_stream(params, enc.data); }));
  }
  result.encrypt_seconds = median(enc_t);
  result.decrypt_seconds = median(dec_t);
  result.round_trip_ok = dec.data == message && dec.checksum == enc.checksum;
  return result;
}

}  // namespace pmse
