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

#include "pmse/image.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "pmse/error.hpp"

namespace pmse {

namespace {

// Skips whitespace and '#' comments (which run to end of line).
void skip_separators(std::istream& in) {
  for (;;) {
    const int c = in.peek();
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

std::size_t read_header_number(std::istream& in, const char* what) {
  skip_separators(in);
  std::size_t value = 0;
  int digits = 0;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<std::size_t>(in.get() - '0');
    if (++digits > 9) throw Error(ErrorCode::kMalformedHeader, std::string(what) + " too large");
  }
  if (digits == 0) throw Error(ErrorCode::kMalformedHeader, std::string("missing ") + what);
  return value;
}

void check_shape(const Image& img) {
  if (img.width == 0 || img.height == 0) throw Error(ErrorCode::kMalformedHeader, "zero-sized image");
  if (img.channels != 1 && img.channels != 3)
    throw Error(ErrorCode::kMalformedHeader, "channels must be 1 or 3");
  if (img.pixels.size() != img.width * img.height * static_cast<std::size_t>(img.channels))
    throw Error(ErrorCode::kMalformedHeader, "pixel buffer does not match dimensions");
}

}  // namespace

Image read_pnm(std::istream& in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
    throw Error(ErrorCode::kMalformedHeader, "expected P5 or P6 magic");

  Image img;
  img.channels = magic[1] == '5' ? 1 : 3;
  img.width = read_header_number(in, "width");
  img.height = read_header_number(in, "height");
  const std::size_t maxval = read_header_number(in, "maxval");
  if (img.width == 0 || img.height == 0) throw Error(ErrorCode::kMalformedHeader, "zero-sized image");
  if (maxval != 255) throw Error(ErrorCode::kUnsupportedMaxval, std::to_string(maxval));

  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep))
    throw Error(ErrorCode::kMalformedHeader, "expected whitespace after maxval");

  const std::size_t n = img.width * img.height * static_cast<std::size_t>(img.channels);
  img.pixels.resize(n);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw Error(ErrorCode::kTruncatedPayload,
                "expected " + std::to_string(n) + " bytes, got " + std::to_string(in.gcount()));
  return img;
}

Image read_pnm(ByteView data) {
  std::istringstream in(std::string(data.begin(), data.end()), std::ios::binary);
  return read_pnm(in);
}

Image read_pnm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  return read_pnm(in);
}

void write_pnm(const Image& image, std::ostream& out) {
  check_shape(image);
  out << (image.channels == 1 ? "P5" : "P6") << '\n'
      << image.width << ' ' << image.height << '\n'
      << 255 << '\n';
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed");
}

Bytes write_pnm(const Image& image) {
  std::ostringstream out(std::ios::binary);
  write_pnm(image, out);
  const std::string s = out.str();
  return Bytes(s.begin(), s.end());
}

void write_pnm_file(const Image& image, const std::string& path) {
  check_shape(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot create " + path);
  write_pnm(image, out);
}

}  // namespace pmse
