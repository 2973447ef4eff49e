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

#include "pmse/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <termios.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "pmse/bench.hpp"
#include "pmse/block.hpp"
#include "pmse/cipher.hpp"
#include "pmse/error.hpp"
#include "pmse/image.hpp"
#include "pmse/otp.hpp"
#include "pmse/stats.hpp"

namespace pmse::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data errors (exit 2) vs caller mistakes (exit 1).
int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParams:
    case ErrorCode::kUnknownSet:
      return kExitUsage;
    default:
      return kExitData;
  }
}

struct CipherOptions {
  std::optional<std::string> pass1;
  std::optional<std::string> pass2;
  bool one_password = false;
  std::string iv_hex;
  std::string polynomial = "order1";
  int divisor = 4;
  std::string set = "V1";
  std::string selector = "yn-low-byte";
};

void add_cipher_options(CLI::App& cmd, CipherOptions& o) {
  cmd.add_option("--pass1", o.pass1, "First password (else PMSE_PASS1, else prompt)");
  cmd.add_option("--pass2", o.pass2, "Second password (else PMSE_PASS2); absent means one-password mode");
  cmd.add_flag("--one-password", o.one_password, "Ignore any second password");
  cmd.add_option("--iv", o.iv_hex, "48 hex characters (default: the demo iv; use a fresh one for real data)");
  cmd.add_option("--poly", o.polynomial, "Keystream polynomial")->check(CLI::IsMember({"order1", "order2"}));
  cmd.add_option("--divisor", o.divisor, "Order2 recursion divisor")->check(CLI::PositiveNumber);
  cmd.add_option("--set", o.set, "Permutation set: V1, V1C, or a set file");
  cmd.add_option("--selector", o.selector, "Deconstruction selector source")
      ->check(CLI::IsMember({"yn-low-byte", "x0"}));
}

std::optional<std::string> env(const char* name) {
  if (const char* v = std::getenv(name); v && *v) return std::string(v);
  return std::nullopt;
}

std::optional<std::string> prompt_secret(const char* label) {
  if (!isatty(STDIN_FILENO)) return std::nullopt;
  std::cerr << label << ": " << std::flush;
  termios old{};
  tcgetattr(STDIN_FILENO, &old);
  termios quiet = old;
  quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
  tcsetattr(STDIN_FILENO, TCSANOW, &quiet);
  std::string line;
  std::getline(std::cin, line);
  tcsetattr(STDIN_FILENO, TCSANOW, &old);
  std::cerr << '\n';
  if (line.empty()) return std::nullopt;
  return line;
}

CipherParams make_params(const CipherOptions& o, std::optional<std::string> fallback_pass1 = std::nullopt) {
  CipherParams p;
  auto pass1 = o.pass1 ? o.pass1 : env("PMSE_PASS1");
  if (!pass1) pass1 = fallback_pass1;
  if (!pass1) pass1 = prompt_secret("pass1");
  if (!pass1) throw UsageError("pass1 required (--pass1, PMSE_PASS1 or terminal prompt)");
  p.pass1 = to_bytes(*pass1);
  if (!o.one_password) {
    auto pass2 = o.pass2 ? o.pass2 : env("PMSE_PASS2");
    if (pass2) p.pass2 = to_bytes(*pass2);
  }
  if (!o.iv_hex.empty()) p.iv = iv_from_hex(o.iv_hex);
  if (o.polynomial == "order2")
    p.polynomial = Order2Recursive{o.divisor};
  else
    p.polynomial = Order1{};
  p.permutation_set = resolve_set(o.set);
  p.selector = parse_selector(o.selector);
  p.validate();
  return p;
}

std::string checksum_line(const Checksum& cs) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "checksum: %08X\n", cs.value());
  return buf;
}

bool is_pnm_path(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, ByteView(reinterpret_cast<const Byte*>(text.data()), text.size()));
}

std::string read_text(const std::string& path) { return to_string(read_file(path)); }

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"PMSE toolkit: experimental byte-stream cipher, statistics and blocksnet blocks"};
  app.name(argv.empty() ? "pmse" : argv.front());
  app.require_subcommand(1);

  // keystream
  CipherOptions ks_opts;
  std::size_t ks_count = 0;
  std::string ks_out;
  auto* ks = app.add_subcommand("keystream", "Write the first N keystream bytes");
  add_cipher_options(*ks, ks_opts);
  ks->add_option("-n,--count", ks_count, "Number of bytes")->required();
  ks->add_option("-o,--output", ks_out, "Output file")->required();

  // encrypt / decrypt
  CipherOptions enc_opts, dec_opts;
  std::string enc_in, enc_out, dec_in, dec_out, enc_format = "auto", dec_format = "auto";
  auto* enc = app.add_subcommand("encrypt", "Encrypt a file (PNM images: pixel payload only)");
  auto* dec = app.add_subcommand("decrypt", "Decrypt a file produced by encrypt");
  for (auto [cmd, opts, in, outp, fmt] :
       {std::tuple{enc, &enc_opts, &enc_in, &enc_out, &enc_format},
        std::tuple{dec, &dec_opts, &dec_in, &dec_out, &dec_format}}) {
    add_cipher_options(*cmd, *opts);
    cmd->add_option("input", *in, "Input file")->required();
    cmd->add_option("output", *outp, "Output file")->required();
    cmd->add_option("--format", *fmt, "auto (by extension), raw or pnm")
        ->check(CLI::IsMember({"auto", "raw", "pnm"}));
  }

  // analyze
  std::string an_in, an_report, an_hist, an_spec;
  auto* an = app.add_subcommand("analyze", "Statistics of a byte file");
  an->add_option("input", an_in, "Input file")->required();
  an->add_option("--report", an_report, "Also write the report here");
  an->add_option("--histogram-csv", an_hist, "Histogram CSV output");
  an->add_option("--spectrum-csv", an_spec, "Amplitude spectrum CSV output");

  // compare-otp
  CipherOptions cmp_opts;
  std::string cmp_in, cmp_report, cmp_pad;
  auto* cmp = app.add_subcommand("compare-otp", "Entropy/correlation of PMSE vs one-time-pad on an image");
  add_cipher_options(*cmp, cmp_opts);
  cmp->add_option("image", cmp_in, "PGM/PPM image")->required();
  cmp->add_option("--report", cmp_report, "Also write the report here");
  cmp->add_option("--save-pad", cmp_pad, "Persist the one-time pad (off unless given)");

  // bench
  CipherOptions bench_opts;
  std::size_t bench_bytes = 1 << 20;
  int bench_runs = 5;
  auto* bn = app.add_subcommand("bench", "Encrypt/decrypt throughput");
  add_cipher_options(*bn, bench_opts);
  bn->add_option("--bytes", bench_bytes, "Message size")->check(CLI::PositiveNumber);
  bn->add_option("--runs", bench_runs, "Timed runs (median reported)")->check(CLI::PositiveNumber);

  // block
  auto* block = app.add_subcommand("block", "Blocksnet self-decryptable HTML blocks");
  block->require_subcommand(1);

  CipherOptions bb_opts;
  std::string bb_in, bb_out, bb_type = "text", bb_template, bb_decryptor;
  std::optional<std::string> bb_prompt;
  auto* bb = block->add_subcommand("build", "Encrypt content into one block");
  add_cipher_options(*bb, bb_opts);
  bb->add_option("input", bb_in, "Content file")->required();
  bb->add_option("output", bb_out, "Block HTML output")->required();
  bb->add_option("--type", bb_type, "Content type")->check(CLI::IsMember({"text", "html-block", "url-list"}));
  bb->add_option("--prompt", bb_prompt, "Clear-text question or hint");

  CipherOptions bc_opts;
  std::string bc_manifest, bc_dir, bc_pattern = "block_{index}.html";
  auto* bc = block->add_subcommand("chain", "Build a chain of blocks from a JSON manifest");
  add_cipher_options(*bc, bc_opts);
  bc->add_option("manifest", bc_manifest, "Chain manifest (see docs/formats.md)")->required();
  bc->add_option("outdir", bc_dir, "Output directory")->required();
  bc->add_option("--url-pattern", bc_pattern, "Next-block URL/file name, {index} is replaced");

  for (auto* cmd : {bb, bc}) {
    cmd->add_option("--template", bb_template, "HTML template with the slot markers");
    cmd->add_option("--decryptor", bb_decryptor, "Browser decryptor script to inline");
  }

  std::string bv_in;
  auto* bv = block->add_subcommand("verify", "Check a block's ciphertext checksum");
  bv->add_option("block", bv_in, "Block HTML")->required();

  std::string bo_in, bo_out;
  std::optional<std::string> bo_pass1, bo_pass2;
  auto* bo = block->add_subcommand("open", "Decrypt a block's payload");
  bo->add_option("block", bo_in, "Block HTML")->required();
  bo->add_option("output", bo_out, "Plaintext output")->required();
  bo->add_option("--pass1", bo_pass1, "First password (else PMSE_PASS1, else prompt)");
  bo->add_option("--pass2", bo_pass2, "Second password (else PMSE_PASS2)");

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ks) {
      const Bytes data = keystream(make_params(ks_opts), ks_count);
      write_file(ks_out, data);
      out << "wrote " << data.size() << " keystream bytes to " << ks_out << "\n";
    } else if (*enc || *dec) {
      const bool encrypting = static_cast<bool>(*enc);
      const CipherParams params = make_params(encrypting ? enc_opts : dec_opts);
      const std::string& in = encrypting ? enc_in : dec_in;
      const std::string& outp = encrypting ? enc_out : dec_out;
      const std::string& fmt = encrypting ? enc_format : dec_format;
      auto crypt = [&](ByteView data) {
        return encrypting ? encrypt_stream(params, data) : decrypt_stream(params, data);
      };
      StreamResult res;
      if (fmt == "pnm" || (fmt == "auto" && is_pnm_path(in))) {
        Image img = read_pnm_file(in);
        res = crypt(img.pixels);
        img.pixels = res.data;
        write_pnm_file(img, outp);
      } else {
        res = crypt(read_file(in));
        write_file(outp, res.data);
      }
      out << checksum_line(res.checksum);
    } else if (*an) {
      const Bytes data = read_file(an_in);
      const std::string report = analyze_report(data).to_text();
      out << report;
      if (!an_report.empty()) write_text(an_report, report);
      if (!an_hist.empty()) write_text(an_hist, histogram_csv(histogram(data)));
      if (!an_spec.empty()) write_text(an_spec, spectrum_csv(spectrum(data), data.size()));
    } else if (*cmp) {
      const Image img = read_pnm_file(cmp_in);
      Bytes pad;
      const Comparison c = compare(img, make_params(cmp_opts), cmp_pad.empty() ? nullptr : &pad);
      const std::string report = c.to_report().to_text();
      out << report;
      if (!cmp_report.empty()) write_text(cmp_report, report);
      if (!cmp_pad.empty()) write_file(cmp_pad, pad);
    } else if (*bn) {
      // A fixed demo password keeps `pmse bench` usable without secrets.
      const BenchResult r = bench(make_params(bench_opts, std::string("benchmark")), bench_bytes, bench_runs);
      out << r.to_report().to_text();
      if (!r.round_trip_ok) return kExitData;
    } else if (*bb || *bc) {
      BuildOptions opts;
      if (!bb_template.empty()) opts.template_html = read_text(bb_template);
      if (!bb_decryptor.empty()) opts.decryptor_js = read_text(bb_decryptor);
      if (*bb) {
        opts.content_type = parse_content_type(bb_type);
        opts.prompt = bb_prompt;
        write_text(bb_out, build_block(read_file(bb_in), make_params(bb_opts), opts));
        out << "wrote block " << bb_out << "\n";
      } else {
        const auto manifest = nlohmann::json::parse(read_text(bc_manifest), nullptr, false);
        if (manifest.is_discarded() || !manifest.contains("items") || !manifest["items"].is_array())
          throw Error(ErrorCode::kMalformedEncoding, "manifest needs an \"items\" array");
        const auto base = std::filesystem::path(bc_manifest).parent_path();
        std::vector<ChainItem> items;
        for (const auto& it : manifest["items"]) {
          CipherOptions item_opts = bc_opts;
          item_opts.pass1 = it.value("pass1", std::string());
          if (item_opts.pass1->empty()) throw UsageError("every chain item needs pass1");
          item_opts.pass2 = it.contains("pass2") ? std::optional(it["pass2"].get<std::string>()) : std::nullopt;
          item_opts.one_password = !item_opts.pass2;
          if (it.contains("iv")) item_opts.iv_hex = it["iv"].get<std::string>();
          ChainItem item;
          item.params = make_params(item_opts);
          if (it.contains("content_file"))
            item.content = read_file((base / it["content_file"].get<std::string>()).string());
          else
            item.content = to_bytes(it.value("text", std::string()));
          if (it.contains("prompt")) item.prompt = it["prompt"].get<std::string>();
          items.push_back(std::move(item));
        }
        const auto blocks = build_chain(items, bc_pattern, opts);
        std::filesystem::create_directories(bc_dir);
        for (std::size_t k = 0; k < blocks.size(); ++k) {
          const auto path = std::filesystem::path(bc_dir) / chain_url(bc_pattern, k);
          write_text(path.string(), blocks[k]);
          out << "wrote block " << path.string() << "\n";
        }
      }
    } else if (*bv) {
      const Block b = parse_block(read_text(bv_in));
      if (verify_block(b) == VerifyResult::kOk) {
        out << "ok\n";
      } else {
        err << "checksum mismatch\n";
        return kExitData;
      }
    } else if (*bo) {
      const Block b = parse_block(read_text(bo_in));
      auto pass1 = bo_pass1 ? bo_pass1 : env("PMSE_PASS1");
      if (!pass1) pass1 = prompt_secret("pass1");
      if (!pass1) throw UsageError("pass1 required");
      std::optional<std::string> pass2;
      if (!b.version.one_password) {
        pass2 = bo_pass2 ? bo_pass2 : env("PMSE_PASS2");
        if (!pass2) pass2 = prompt_secret("pass2");
        if (!pass2) throw UsageError("this block needs pass2");
      }
      const Bytes plain = open_block(b, *pass1, pass2 ? std::optional<std::string_view>(*pass2) : std::nullopt);
      write_file(bo_out, plain);
      if (b.content_type == ContentType::kUrlList) {
        try {
          const ChainLink link = parse_chain_link(plain);
          if (link.next) out << "next: " << link.next->url << "\n";
        } catch (const Error&) {
          err << "payload is not a readable chain link (wrong password?)\n";
          return kExitData;
        }
      }
      out << "wrote " << plain.size() << " bytes to " << bo_out << "\n";
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace pmse::cli
