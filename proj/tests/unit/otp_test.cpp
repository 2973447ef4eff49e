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

#include <gtest/gtest.h>

#include "pmse/error.hpp"
#include "pmse/stats.hpp"
#include "support/generators.hpp"
#include "support/test_image.hpp"

namespace pmse {
namespace {

TEST(Pad, LengthAndFreshness) {
  EXPECT_TRUE(generate_pad(0).empty());
  const Bytes a = generate_pad(64), b = generate_pad(64);
  EXPECT_EQ(a.size(), 64u);
  EXPECT_NE(a, b);
}

TEST(Otp, XorRoundTrip) {
  std::mt19937_64 rng(1);
  const Bytes msg = testing::random_bytes(rng, 777);
  const Bytes pad = generate_pad(msg.size());
  const Bytes ct = otp_encrypt(msg, pad);
  for (std::size_t k = 0; k < msg.size(); ++k) ASSERT_EQ(ct[k], msg[k] ^ pad[k]);
  EXPECT_EQ(otp_encrypt(ct, pad), msg);
}

TEST(Otp, LengthMismatch) {
  try {
    otp_encrypt(Bytes(3), Bytes(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(Compare, RowsAndReport) {
  const Image img = testing::synthetic_micrograph(128);
  CipherParams p = testing::aa_bb_params();
  p.permutation_set = builtin_set("V1C");
  Bytes pad;
  const Comparison cmp = compare(img, p, &pad);
  ASSERT_EQ(cmp.rows.size(), 5u);
  const char* names[] = {"original", "deconstructed", "keystream", "pmse", "otp"};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(cmp.rows[k].name, names[k]);
  EXPECT_FALSE(cmp.row("original").correlation.has_value());
  EXPECT_DOUBLE_EQ(cmp.row("original").entropy, shannon_entropy(img.pixels));
  EXPECT_DOUBLE_EQ(cmp.row("pmse").entropy, shannon_entropy(encrypt_stream(p, img.pixels).data));
  EXPECT_DOUBLE_EQ(cmp.row("otp").entropy, shannon_entropy(otp_encrypt(img.pixels, pad)));
  EXPECT_GT(cmp.row("pmse").entropy, cmp.row("original").entropy);

  const Report rep = cmp.to_report();
  EXPECT_TRUE(rep.get("pmse.correlation").has_value());
  EXPECT_FALSE(rep.get("original.correlation").has_value());
  EXPECT_NEAR(*rep.get_number("entropy_gap_pmse_otp"),
              std::abs(cmp.row("pmse").entropy - cmp.row("otp").entropy), 1e-9);
  EXPECT_THROW(cmp.row("nope"), Error);
}

TEST(Compare, ConstantImageHasUndefinedCorrelation) {
  Image img;
  img.width = 64;
  img.height = 64;
  img.pixels.assign(64 * 64, 9);
  const Comparison cmp = compare(img, testing::aa_bb_params());
  EXPECT_FALSE(cmp.row("pmse").correlation.has_value());
  EXPECT_EQ(cmp.to_report().get("pmse.correlation"), "undefined");
}

}  // namespace
}  // namespace pmse
