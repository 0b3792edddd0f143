// Copyright 2026 The ITIC Authors. All Rights Reserved.
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

#include "itic/image_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "itic/error.h"

namespace itic {

namespace {

constexpr uint32_t kMaxDimension = 1u << 16;

std::vector<uint8_t> ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowIo("cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) ThrowIo("read failed: " + path.string());
  return bytes;
}

Tensor FromInterleaved(const uint8_t* rgb, size_t height, size_t width) {
  Tensor t(3, height, width);
  for (size_t y = 0; y < height; ++y) {
    for (size_t x = 0; x < width; ++x) {
      const uint8_t* px = rgb + (y * width + x) * 3;
      for (size_t c = 0; c < 3; ++c) t.at(c, y, x) = PixelToUnit(px[c]);
    }
  }
  return t;
}

std::vector<uint8_t> ToInterleaved(const Tensor& t) {
  std::vector<uint8_t> rgb(t.plane_size() * 3);
  for (size_t y = 0; y < t.height(); ++y) {
    for (size_t x = 0; x < t.width(); ++x) {
      uint8_t* px = &rgb[(y * t.width() + x) * 3];
      for (size_t c = 0; c < 3; ++c) px[c] = UnitToPixel(t.at(c, y, x));
    }
  }
  return rgb;
}

std::pair<Tensor, ImageMeta> DecodePng(std::span<const uint8_t> bytes,
                                       const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    ThrowIo("unsupported or corrupt PNG " + name + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    ThrowIo("unsupported bit depth (16-bit PNG): " + name);
  }
  if (image.width == 0 || image.height == 0 || image.width > kMaxDimension ||
      image.height > kMaxDimension) {
    png_image_free(&image);
    ThrowIo("unsupported PNG dimensions: " + name);
  }
  image.format = PNG_FORMAT_RGB;
  std::vector<uint8_t> rgb(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgb.data(), 0, nullptr)) {
    ThrowIo("PNG decode failed for " + name + ": " + image.message);
  }
  ImageMeta meta{image.height, image.width, 8};
  return {FromInterleaved(rgb.data(), image.height, image.width), meta};
}

// Reads the next whitespace/comment-delimited unsigned integer of a PNM
// header, advancing `pos`.
uint32_t ReadPnmNumber(std::span<const uint8_t> bytes, size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(bytes[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
    ThrowIo("malformed PPM header");
  }
  uint64_t v = 0;
  while (pos < bytes.size() && std::isdigit(bytes[pos])) {
    v = v * 10 + (bytes[pos++] - '0');
    if (v > kMaxDimension) ThrowIo("PPM header value too large");
  }
  return static_cast<uint32_t>(v);
}

}  // namespace

uint8_t UnitToPixel(double v) {
  if (!(v > 0.0)) return 0;  // also catches NaN
  if (v >= 1.0) return 255;
  return static_cast<uint8_t>(std::lround(v * 255.0));
}

std::pair<Tensor, ImageMeta> DecodePpm(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    ThrowIo("not a binary PPM (P6)");
  }
  size_t pos = 2;
  const uint32_t width = ReadPnmNumber(bytes, pos);
  const uint32_t height = ReadPnmNumber(bytes, pos);
  const uint32_t maxval = ReadPnmNumber(bytes, pos);
  if (maxval != 255) {
    ThrowIo("unsupported PPM bit depth (maxval " +
                 std::to_string(maxval) + ")");
  }
  if (width == 0 || height == 0) ThrowIo("PPM has zero area");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    ThrowIo("malformed PPM header");
  }
  ++pos;  // single whitespace before raster
  const size_t need = size_t{width} * height * 3;
  if (bytes.size() - pos < need) ThrowIo("PPM raster truncated");
  ImageMeta meta{height, width, 8};
  return {FromInterleaved(bytes.data() + pos, height, width), meta};
}

std::pair<Tensor, ImageMeta> LoadImage(const std::filesystem::path& path) {
  const std::vector<uint8_t> bytes = ReadFile(path);
  static constexpr uint8_t kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(kPngSig, kPngSig + 8, bytes.begin())) {
    return DecodePng(bytes, path.string());
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    return DecodePpm(bytes);
  }
  ThrowIo("unsupported image format: " + path.string());
}

void SaveImage(const std::filesystem::path& path, const Tensor& rgb) {
  if (rgb.channels() != 3 || rgb.empty()) {
    ThrowInvalid("SaveImage expects a non-empty 3-channel tensor");
  }
  const std::vector<uint8_t> pixels = ToInterleaved(rgb);
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".ppm") {
    std::ofstream out(path, std::ios::binary);
    if (!out) ThrowIo("cannot write " + path.string());
    out << "P6\n" << rgb.width() << " " << rgb.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out) ThrowIo("write failed: " + path.string());
    return;
  }
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(rgb.width());
  image.height = static_cast<png_uint_32>(rgb.height());
  image.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0,
                               nullptr)) {
    ThrowIo("cannot write PNG " + path.string() + ": " + image.message);
  }
}

}  // namespace itic
