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

#include "pmse/block.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "pmse/error.hpp"

namespace pmse {

using nlohmann::json;

namespace {

constexpr std::string_view kFormatTag = "pmse-block";
constexpr std::string_view kChainLinkTag = "pmse-chain-link";
constexpr std::string_view kIslandOpen = R"(<script type="application/json" id="pmse-block">)";
constexpr std::string_view kIslandId = R"(id="pmse-block")";
constexpr std::string_view kScriptClose = "</script>";

constexpr std::string_view kDefaultTemplate = R"(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>PMSE block</title>
</head>
<body>
<main id="pmse-view">
<p id="pmse-prompt">{{PMSE_PROMPT}}</p>
<div id="pmse-controls"></div>
<pre id="pmse-output"></pre>
</main>
{{PMSE_METADATA}}
<script id="pmse-decryptor">
{{PMSE_DECRYPTOR}}
</script>
</body>
</html>
)";

std::string checksum_hex(std::uint32_t cs) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08X", cs);
  return buf;
}

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// JSON that is safe inside a <script> element: '<', '>' and '&' can only
// occur inside strings, where the \u escapes are equivalent.
std::string script_safe_json(const json& j) {
  const std::string raw = j.dump();
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '<': out += "\\u003c"; break;
      case '>': out += "\\u003e"; break;
      case '&': out += "\\u0026"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string script_safe_js(std::string_view js) {
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    const auto hit = js.find("</", pos);
    if (hit == std::string_view::npos) break;
    out.append(js.substr(pos, hit - pos));
    out += "<\\/";
    pos = hit + 2;
  }
  out.append(js.substr(pos));
  return out;
}

// Single left-to-right pass, so replacement text is never rescanned for slots.
std::string fill_template(std::string_view tpl, std::string_view metadata, std::string_view decryptor,
                          std::string_view prompt) {
  if (tpl.find(kMetadataSlot) == std::string_view::npos)
    throw Error(ErrorCode::kTemplateMissingSlot, std::string(kMetadataSlot));
  if (tpl.find(kDecryptorSlot) == std::string_view::npos)
    throw Error(ErrorCode::kTemplateMissingSlot, std::string(kDecryptorSlot));

  const std::array<std::pair<std::string_view, std::string_view>, 3> slots{{
      {kMetadataSlot, metadata},
      {kDecryptorSlot, decryptor},
      {kPromptSlot, prompt},
  }};
  std::string out;
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    bool replaced = false;
    if (tpl[pos] == '{') {
      for (const auto& [slot, value] : slots) {
        if (tpl.substr(pos, slot.size()) == slot) {
          out.append(value);
          pos += slot.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(tpl[pos++]);
  }
  return out;
}

json version_json(const BlockVersion& v) {
  json j;
  if (const auto* p = std::get_if<Order2Recursive>(&v.polynomial)) {
    j["polynomial"] = "order2-recursive";
    j["divisor"] = p->divisor;
  } else {
    j["polynomial"] = "order1";
  }
  j["permutation_set"] = v.permutation_set;
  if (v.permutation_cases) j["permutation_cases"] = *v.permutation_cases;
  j["selector"] = std::string(to_string(v.selector));
  j["passwords"] = v.one_password ? 1 : 2;
  return j;
}

[[noreturn]] void not_a_block(const std::string& why) { throw Error(ErrorCode::kNotABlock, why); }

BlockVersion version_from_json(const json& j) {
  BlockVersion v;
  const std::string poly = j.at("polynomial").get<std::string>();
  if (poly == "order1") {
    v.polynomial = Order1{};
  } else if (poly == "order2-recursive") {
    v.polynomial = Order2Recursive{j.at("divisor").get<std::int32_t>()};
  } else {
    not_a_block("unknown polynomial " + poly);
  }
  v.permutation_set = j.at("permutation_set").get<std::string>();
  if (j.contains("permutation_cases")) v.permutation_cases = j.at("permutation_cases").get<std::string>();
  if (v.permutation_set != "V1" && v.permutation_set != "V1C" && !v.permutation_cases)
    not_a_block("custom permutation set without its cases");
  try {
    v.selector = parse_selector(j.at("selector").get<std::string>());
  } catch (const Error&) {
    not_a_block("unknown selector");
  }
  const int passwords = j.at("passwords").get<int>();
  if (passwords != 1 && passwords != 2) not_a_block("passwords must be 1 or 2");
  v.one_password = passwords == 1;
  return v;
}

BlockVersion version_of(const CipherParams& params) {
  BlockVersion v;
  v.polynomial = params.polynomial;
  v.permutation_set = params.permutation_set.id();
  if (v.permutation_set != "V1" && v.permutation_set != "V1C")
    v.permutation_cases = format_set(params.permutation_set);
  v.selector = params.selector;
  v.one_password = params.one_password();
  return v;
}

std::string_view find_island(std::string_view html) {
  std::size_t search = 0;
  while (true) {
    const auto id = html.find(kIslandId, search);
    if (id == std::string_view::npos) not_a_block("no pmse-block metadata element");
    const auto open = html.rfind("<script", id);
    const auto tag_end = html.find('>', id);
    // The id must sit inside a <script ...> start tag.
    if (open != std::string_view::npos && tag_end != std::string_view::npos &&
        html.substr(open, id - open).find('>') == std::string_view::npos) {
      const auto body = tag_end + 1;
      const auto close = html.find(kScriptClose, body);
      if (close == std::string_view::npos) not_a_block("unterminated metadata element");
      return html.substr(body, close - body);
    }
    search = id + kIslandId.size();
  }
}

std::string utf8_or_invalid(const json& j) {
  try {
    return j.dump();
  } catch (const json::type_error&) {
    throw Error(ErrorCode::kInvalidParams, "chain link text and passwords must be UTF-8");
  }
}

}  // namespace

std::string_view to_string(ContentType t) noexcept {
  switch (t) {
    case ContentType::kText: return "text";
    case ContentType::kHtmlBlock: return "html-block";
    case ContentType::kUrlList: return "url-list";
  }
  return "text";
}

ContentType parse_content_type(std::string_view s) {
  if (s == "text") return ContentType::kText;
  if (s == "html-block") return ContentType::kHtmlBlock;
  if (s == "url-list") return ContentType::kUrlList;
  throw Error(ErrorCode::kInvalidParams, "unknown content type: " + std::string(s));
}

std::string_view default_template() noexcept { return kDefaultTemplate; }

std::string utc_timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool is_utc_timestamp(std::string_view s) noexcept {
  constexpr std::string_view kShape = "dddd-dd-ddTdd:dd:ddZ";
  if (s.size() != kShape.size()) return false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (kShape[k] == 'd' ? !std::isdigit(static_cast<unsigned char>(s[k])) : s[k] != kShape[k])
      return false;
  }
  auto num = [&](std::size_t at, std::size_t len) { return std::stoi(std::string(s.substr(at, len))); };
  const int month = num(5, 2), day = num(8, 2), hour = num(11, 2), minute = num(14, 2), sec = num(17, 2);
  return month >= 1 && month <= 12 && day >= 1 && day <= 31 && hour <= 23 && minute <= 59 && sec <= 60;
}

std::string build_block(ByteView content, const CipherParams& params, const BuildOptions& options) {
  const StreamResult enc = encrypt_stream(params, content);

  json meta;
  meta["format"] = kFormatTag;
  meta["schema"] = kBlockSchemaVersion;
  meta["version"] = version_json(version_of(params));
  meta["iv_hex"] = to_hex(params.iv);
  meta["payload_b64"] = base64_encode(enc.data);
  meta["checksum_hex"] = checksum_hex(enc.checksum.value());
  meta["timestamp"] = options.timestamp.value_or(utc_timestamp_now());
  meta["content_type"] = std::string(to_string(options.content_type));
  if (options.prompt) meta["prompt"] = *options.prompt;

  std::string island;
  try {
    island = std::string(kIslandOpen) + script_safe_json(meta) + std::string(kScriptClose);
  } catch (const json::type_error&) {
    throw Error(ErrorCode::kInvalidParams, "prompt must be UTF-8");
  }
  return fill_template(options.template_html, island, script_safe_js(options.decryptor_js),
                       html_escape(options.prompt.value_or("")));
}

Block parse_block(std::string_view html) {
  const std::string_view island = find_island(html);
  const json meta = json::parse(island.begin(), island.end(), nullptr, false);
  if (meta.is_discarded() || !meta.is_object()) not_a_block("metadata is not a JSON object");
  if (meta.value("format", std::string()) != kFormatTag) not_a_block("metadata format tag missing");
  if (!meta.contains("schema") || !meta["schema"].is_number_integer()) not_a_block("schema missing");

  Block b;
  b.schema = meta["schema"].get<int>();
  if (b.schema != kBlockSchemaVersion)
    throw Error(ErrorCode::kSchemaVersionUnknown, std::to_string(b.schema));
  try {
    b.version = version_from_json(meta.at("version"));
    b.iv_hex = meta.at("iv_hex").get<std::string>();
    b.payload_b64 = meta.at("payload_b64").get<std::string>();
    b.checksum_hex = meta.at("checksum_hex").get<std::string>();
    b.timestamp = meta.at("timestamp").get<std::string>();
    b.content_type = parse_content_type(meta.at("content_type").get<std::string>());
    if (meta.contains("prompt")) b.prompt = meta.at("prompt").get<std::string>();
  } catch (const json::exception& e) {
    not_a_block(e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNotABlock) throw;
    not_a_block(e.what());
  }
  if (b.iv_hex.size() != 2 * kIvSize) not_a_block("iv_hex must be 48 hex characters");
  if (b.checksum_hex.size() != 8) not_a_block("checksum_hex must be 8 hex characters");
  return b;
}

VerifyResult verify_block(const Block& block) {
  Bytes payload;
  try {
    payload = base64_decode(block.payload_b64);
  } catch (const Error&) {
    return VerifyResult::kChecksumMismatch;
  }
  std::string expected = block.checksum_hex;
  std::transform(expected.begin(), expected.end(), expected.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return checksum_hex(checksum(payload).value()) == expected ? VerifyResult::kOk
                                                             : VerifyResult::kChecksumMismatch;
}

CipherParams block_params(const Block& block, std::string_view pass1,
                          std::optional<std::string_view> pass2) {
  CipherParams p;
  p.polynomial = block.version.polynomial;
  p.pass1 = to_bytes(pass1);
  if (!block.version.one_password) {
    if (!pass2) throw Error(ErrorCode::kInvalidParams, "block needs two passwords");
    p.pass2 = to_bytes(*pass2);
  }
  p.iv = iv_from_hex(block.iv_hex);
  p.permutation_set = block.version.permutation_cases
                          ? parse_set(*block.version.permutation_cases, block.version.permutation_set)
                          : builtin_set(block.version.permutation_set);
  p.selector = block.version.selector;
  p.validate();
  return p;
}

Bytes open_block(const Block& block, std::string_view pass1, std::optional<std::string_view> pass2) {
  return decrypt_stream(block_params(block, pass1, pass2), base64_decode(block.payload_b64)).data;
}

Bytes encode_chain_link(const ChainLink& link) {
  json j;
  j["format"] = kChainLinkTag;
  j["text"] = link.text;
  if (link.next) {
    json n;
    n["url"] = link.next->url;
    n["pass1"] = link.next->pass1;
    if (link.next->pass2) n["pass2"] = *link.next->pass2;
    j["next"] = n;
  }
  return to_bytes(utf8_or_invalid(j));
}

ChainLink parse_chain_link(ByteView plaintext) {
  const json j = json::parse(plaintext.begin(), plaintext.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.value("format", std::string()) != kChainLinkTag)
    throw Error(ErrorCode::kNotAChainLink, "payload is not a chain link");
  try {
    ChainLink link;
    link.text = j.at("text").get<std::string>();
    if (j.contains("next")) {
      const json& n = j.at("next");
      NextBlock next;
      next.url = n.at("url").get<std::string>();
      next.pass1 = n.at("pass1").get<std::string>();
      if (n.contains("pass2")) next.pass2 = n.at("pass2").get<std::string>();
      link.next = std::move(next);
    }
    return link;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kNotAChainLink, e.what());
  }
}

std::string chain_url(std::string_view url_pattern, std::size_t index) {
  constexpr std::string_view kToken = "{index}";
  if (url_pattern.find(kToken) == std::string_view::npos)
    throw Error(ErrorCode::kInvalidParams, "url pattern needs an {index} placeholder");
  std::string out;
  std::size_t pos = 0;
  for (auto hit = url_pattern.find(kToken); hit != std::string_view::npos;
       hit = url_pattern.find(kToken, pos)) {
    out.append(url_pattern.substr(pos, hit - pos));
    out += std::to_string(index);
    pos = hit + kToken.size();
  }
  out.append(url_pattern.substr(pos));
  return out;
}

std::vector<std::string> build_chain(std::span<const ChainItem> items, std::string_view url_pattern,
                                     const BuildOptions& options) {
  if (items.empty()) throw Error(ErrorCode::kInvalidParams, "a chain needs at least one item");

  std::vector<std::string> blocks;
  blocks.reserve(items.size());
  std::string last_stamp;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const ChainItem& item = items[k];
    BuildOptions opts = options;
    opts.prompt = item.prompt;
    std::string stamp = options.timestamp.value_or(utc_timestamp_now());
    if (stamp < last_stamp) stamp = last_stamp;
    opts.timestamp = last_stamp = stamp;

    const bool terminal = k + 1 == items.size();
    if (terminal) {
      blocks.push_back(build_block(item.content, item.params, opts));
      continue;
    }
    const CipherParams& next_params = items[k + 1].params;
    ChainLink link;
    link.text = to_string(item.content);
    link.next = NextBlock{chain_url(url_pattern, k + 1), to_string(next_params.pass1),
                          next_params.pass2 ? std::optional(to_string(*next_params.pass2)) : std::nullopt};
    opts.content_type = ContentType::kUrlList;
    blocks.push_back(build_block(encode_chain_link(link), item.params, opts));
  }
  return blocks;
}

}  // namespace pmse
