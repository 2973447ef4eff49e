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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmse/bytes.hpp"
#include "pmse/cipher.hpp"

namespace pmse {

// Blocksnet: self-decryptable HTML blocks. Format v1 is documented in
// docs/formats.md.

inline constexpr int kBlockSchemaVersion = 1;

enum class ContentType { kText, kHtmlBlock, kUrlList };

std::string_view to_string(ContentType t) noexcept;
ContentType parse_content_type(std::string_view s);

/// The cipher variant a block was encrypted with (everything but the secrets).
struct BlockVersion {
  Polynomial polynomial = Order1{};
  std::string permutation_set = "V1";
  // Case list, carried only for non-builtin sets so the block stays
  // self-contained.
  std::optional<std::string> permutation_cases;
  SelectorSource selector = SelectorSource::kYnLowByte;
  bool one_password = false;

  friend bool operator==(const BlockVersion&, const BlockVersion&) = default;
};

struct Block {
  int schema = kBlockSchemaVersion;
  BlockVersion version;
  std::string iv_hex;
  std::string payload_b64;
  std::string checksum_hex;  // 8 uppercase hex digits
  std::string timestamp;     // YYYY-MM-DDTHH:MM:SSZ
  ContentType content_type = ContentType::kText;
  std::optional<std::string> prompt;

  friend bool operator==(const Block&, const Block&) = default;
};

inline constexpr std::string_view kMetadataSlot = "{{PMSE_METADATA}}";
inline constexpr std::string_view kDecryptorSlot = "{{PMSE_DECRYPTOR}}";
inline constexpr std::string_view kPromptSlot = "{{PMSE_PROMPT}}";

/// Minimal page with all three slots.
std::string_view default_template() noexcept;

struct BuildOptions {
  ContentType content_type = ContentType::kText;
  std::optional<std::string> prompt;
  std::string template_html = std::string(default_template());
  // Inlined verbatim into the decryptor script element. The browser
  // decryptor is built separately; without it the block still carries a
  // complete, verifiable payload.
  std::string decryptor_js;
  std::optional<std::string> timestamp;  // defaults to now
};

/// Throws kInvalidParams or kTemplateMissingSlot.
std::string build_block(ByteView content, const CipherParams& params, const BuildOptions& options);

/// Finds the metadata island anywhere in the document. Throws kNotABlock or
/// kSchemaVersionUnknown.
Block parse_block(std::string_view html);

enum class VerifyResult { kOk, kChecksumMismatch };

/// Recomputes the ciphertext checksum; needs no password. A payload that is
/// not valid base64 reports a mismatch.
VerifyResult verify_block(const Block& block);

/// Cipher parameters for a block given the secrets the reader supplies.
CipherParams block_params(const Block& block, std::string_view pass1,
                          std::optional<std::string_view> pass2);

/// Decrypts the payload. A wrong password yields garbled bytes, not an error.
Bytes open_block(const Block& block, std::string_view pass1,
                 std::optional<std::string_view> pass2);

struct NextBlock {
  std::string url;
  std::string pass1;
  std::optional<std::string> pass2;

  friend bool operator==(const NextBlock&, const NextBlock&) = default;
};

/// Decrypted content of a non-terminal chain block.
struct ChainLink {
  std::string text;
  std::optional<NextBlock> next;

  friend bool operator==(const ChainLink&, const ChainLink&) = default;
};

Bytes encode_chain_link(const ChainLink& link);
/// Throws kNotAChainLink, which is also what a wrong password usually produces.
ChainLink parse_chain_link(ByteView plaintext);

struct ChainItem {
  Bytes content;  // UTF-8 text
  CipherParams params;
  std::optional<std::string> prompt;
};

/// Block k carries, inside its ciphertext, the URL (url_pattern with
/// "{index}" replaced by k+1) and the passwords of block k+1. The last block
/// holds the bare content with options.content_type. Timestamps are
/// non-decreasing along the chain.
std::vector<std::string> build_chain(std::span<const ChainItem> items,
                                     std::string_view url_pattern,
                                     const BuildOptions& options);

std::string chain_url(std::string_view url_pattern, std::size_t index);

std::string utc_timestamp_now();
bool is_utc_timestamp(std::string_view s) noexcept;

}  // namespace pmse
