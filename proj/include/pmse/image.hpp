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

#include <cstddef>
#include <iosfwd>
#include <string>

#include "pmse/bytes.hpp"

namespace pmse {

/// Raster with row-major pixels, R,G,B interleaved when channels == 3.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  int channels = 1;
  Bytes pixels;

  friend bool operator==(const Image&, const Image&) = default;
};

// Binary PGM (P5) and PPM (P6), maxval 255 only.
Image read_pnm(std::istream& in);
Image read_pnm(ByteView data);
Image read_pnm_file(const std::string& path);

/// Throws kMalformedHeader for zero-sized or inconsistent images, kIoFailure
/// when the stream fails.
void write_pnm(const Image& image, std::ostream& out);
Bytes write_pnm(const Image& image);
void write_pnm_file(const Image& image, const std::string& path);

}  // namespace pmse
