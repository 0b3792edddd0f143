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

#ifndef ITIC_IMAGE_IO_H_
#define ITIC_IMAGE_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>

#include "itic/tensor.h"

namespace itic {

// 8-bit sample -> [0, 1]. The value is rounded to float precision so that a
// single averaging Haar level and its inverse are exact in double arithmetic.
inline double PixelToUnit(uint8_t v) {
  return static_cast<double>(static_cast<float>(v) / 255.0f);
}

// [0, 1] -> 8-bit with rounding; out-of-range values are clamped and NaN
// maps to 0.
uint8_t UnitToPixel(double v);

// Reads an 8-bit PNG (gray/palette/RGB/alpha are converted to RGB) or a binary
// PPM (P6, maxval 255). Returns a 3 x H x W tensor in [0, 1] at true size.
std::pair<Tensor, ImageMeta> LoadImage(const std::filesystem::path& path);

// Parses an in-memory P6 PPM.
std::pair<Tensor, ImageMeta> DecodePpm(std::span<const uint8_t> bytes);

// Writes a 3-channel tensor as PNG, or as P6 PPM when the extension is .ppm.
void SaveImage(const std::filesystem::path& path, const Tensor& rgb);

}  // namespace itic

#endif  // ITIC_IMAGE_IO_H_
