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

#ifndef ITIC_CODEC_H_
#define ITIC_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "itic/bitstream.h"
#include "itic/inn.h"
#include "itic/metrics.h"
#include "itic/tensor.h"
#include "itic/weights.h"

namespace itic {

// Spatial padding applied before the network. Four dyadic levels need 16; the
// block DCT then tiles the latent into 4x4 blocks, so it needs 64.
inline constexpr size_t kPadMultiple = 32;
inline constexpr size_t kBdctPadMultiple = 64;

constexpr size_t PadMultiple(bool bdct) {
  return bdct ? kBdctPadMultiple : kPadMultiple;
}

struct CodecConfig {
  size_t n = 128;
  // Borrowed; null selects the identity profile.
  const WeightProfile* profile = nullptr;
  bool bdct = true;
  DownscaleMode mode = DownscaleMode::kHaar;
  // Only labels RD points; it never changes the coded bytes.
  double lambda = 0.0016;
  // Test hook: latents are multiplied by this before rounding and divided by
  // it after decoding. Not stored in the stream, so the decoder must be given
  // the same value.
  double latent_scale = 1.0;

  // Throws kInvalidArgument for an unsupported n, non-positive lambda or
  // non-finite / non-positive latent_scale.
  void Validate() const;
};

struct DecodeOptions {
  // Required for streams produced with a weights file; its hash must match.
  // A seeded profile is reused when its seed matches the header, saving the
  // regeneration. Ignored otherwise.
  const WeightProfile* weights = nullptr;
  double latent_scale = 1.0;
};

// Shape of the coded latent for a padded H x W input.
struct LatentShape {
  size_t channels = 0;
  size_t height = 0;
  size_t width = 0;
  size_t symbols() const { return channels * height * width; }
};

LatentShape CodedLatentShape(const StreamHeader& header);

// Runs the full encoder on a 3 x H x W image in [0, 1] and returns the parsed
// stream parts.
CodedStream EncodeToStream(const Tensor& image, const CodecConfig& cfg);

std::vector<uint8_t> Encode(const Tensor& image, const CodecConfig& cfg);
std::vector<uint8_t> EncodeFile(const std::filesystem::path& path,
                                const CodecConfig& cfg);

// Returns the reconstruction at the true size, clamped to [0, 1]. Any input
// either decodes or throws itic::Error.
Tensor Decode(std::span<const uint8_t> bytes, const DecodeOptions& opts = {});

// Encode + decode + all metrics. MS-SSIM and its dB value are NaN for images
// with a side below 176.
RdPoint RoundtripReport(const Tensor& image, const CodecConfig& cfg);

}  // namespace itic

#endif  // ITIC_CODEC_H_
