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

#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "itic/error.h"
#include "test_util.h"

namespace itic {
namespace {

std::vector<uint8_t> Ppm(size_t w, size_t h, std::vector<uint8_t> rgb) {
  const std::string head =
      "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  std::vector<uint8_t> out(head.begin(), head.end());
  out.insert(out.end(), rgb.begin(), rgb.end());
  return out;
}

void WriteBytes(const std::filesystem::path& p, const std::vector<uint8_t>& b) {
  std::ofstream(p, std::ios::binary)
      .write(reinterpret_cast<const char*>(b.data()),
             static_cast<std::streamsize>(b.size()));
}

TEST(ImageIoTest, WhitePixelPng) {
  testing::TempDir dir;
  SaveImage(dir / "w.png", Tensor(3, 1, 1, 1.0));
  auto [t, meta] = LoadImage(dir / "w.png");
  EXPECT_EQ(meta, (ImageMeta{1, 1, 8}));
  for (double v : t.data()) EXPECT_EQ(v, 1.0);
}

TEST(ImageIoTest, BlackPixelPng) {
  testing::TempDir dir;
  SaveImage(dir / "b.png", Tensor(3, 1, 1, 0.0));
  auto [t, meta] = LoadImage(dir / "b.png");
  for (double v : t.data()) EXPECT_EQ(v, 0.0);
}

TEST(ImageIoTest, HandDecodedPpm) {
  // Pixel (0,0) = (128, 0, 0), the rest white.
  std::vector<uint8_t> rgb(12, 255);
  rgb[0] = 128;
  rgb[1] = 0;
  rgb[2] = 0;
  auto [t, meta] = DecodePpm(Ppm(2, 2, rgb));
  EXPECT_EQ(meta, (ImageMeta{2, 2, 8}));
  EXPECT_NEAR(t.at(0, 0, 0), 128.0 / 255.0, 1e-7);
  EXPECT_EQ(t.at(1, 0, 0), 0.0);
  EXPECT_EQ(t.at(2, 1, 1), 1.0);
}

TEST(ImageIoTest, PpmHeaderComments) {
  const std::string head = "P6 # comment\n1 # w\n1\n255\n";
  std::vector<uint8_t> bytes(head.begin(), head.end());
  bytes.insert(bytes.end(), {10, 20, 30});
  auto [t, meta] = DecodePpm(bytes);
  EXPECT_EQ(UnitToPixel(t.at(2, 0, 0)), 30);
}

TEST(ImageIoTest, PpmErrors) {
  EXPECT_THROW(DecodePpm(Ppm(2, 2, std::vector<uint8_t>(5))), Error);
  const std::string p5 = "P5\n1 1\n255\n\x01";
  EXPECT_THROW(DecodePpm({reinterpret_cast<const uint8_t*>(p5.data()),
                          p5.size()}),
               Error);
  const std::string wide = "P6\n1 1\n65535\n\x01\x02\x03\x04\x05\x06";
  EXPECT_THROW(DecodePpm({reinterpret_cast<const uint8_t*>(wide.data()),
                          wide.size()}),
               Error);
}

TEST(ImageIoTest, PngAndPpmRoundTripPixels) {
  testing::TempDir dir;
  const Tensor t = testing::RandomPixels(3, 5, 7, 11);
  for (const char* name : {"x.png", "x.ppm"}) {
    SaveImage(dir / name, t);
    auto [back, meta] = LoadImage(dir / name);
    EXPECT_EQ(back, t) << name;
    EXPECT_EQ(meta, (ImageMeta{5, 7, 8}));
  }
}

TEST(ImageIoTest, MissingFileIsIoErrorNamingPath) {
  try {
    LoadImage("/nonexistent/dir/img.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/img.png"),
              std::string::npos);
  }
}

TEST(ImageIoTest, GarbageFileIsIoError) {
  testing::TempDir dir;
  WriteBytes(dir / "junk.png", {1, 2, 3, 4, 5});
  try {
    LoadImage(dir / "junk.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(ImageIoTest, UnitToPixelClampsAndRounds) {
  EXPECT_EQ(UnitToPixel(-0.5), 0);
  EXPECT_EQ(UnitToPixel(2.0), 255);
  EXPECT_EQ(UnitToPixel(std::nan("")), 0);
  for (int k = 0; k < 256; ++k) {
    EXPECT_EQ(UnitToPixel(PixelToUnit(static_cast<uint8_t>(k))), k);
  }
}

}  // namespace
}  // namespace itic
