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

#include "itic/codec.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <utility>

#include "itic/entropy.h"
#include "itic/error.h"
#include "itic/image_io.h"
#include "itic/rans.h"
#include "itic/transforms.h"

namespace itic {
namespace {

// Runs `f`, prefixing any itic::Error with the stage name.
template <typename F>
auto Stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(name) + ": " + e.what(), e.stream_kind());
  } catch (const std::bad_alloc&) {
    ThrowCodec(std::string(name) + ": out of memory");
  }
}

const WeightProfile& IdentityProfile() {
  static const WeightProfile* const kIdentity =
      new WeightProfile(WeightProfile::Identity());
  return *kIdentity;
}

bool ValidScale(double s) { return std::isfinite(s) && s > 0.0; }

std::vector<CdfTable> BuildTables(const SideInfo& side_info) {
  std::vector<CdfTable> tables;
  tables.reserve(side_info.size());
  for (const ChannelStats& c : side_info) tables.push_back(BuildCdf(c));
  return tables;
}

}  // namespace

void CodecConfig::Validate() const {
  if (!IsSupportedSqueeze(static_cast<uint32_t>(n)) || n > kLatentChannels) {
    ThrowInvalid("N must be one of 16, 32, 128, 768 (got " + std::to_string(n) +
                 ")");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    ThrowInvalid("lambda must be positive");
  }
  if (!ValidScale(latent_scale)) {
    ThrowInvalid("latent_scale must be positive and finite");
  }
}

LatentShape CodedLatentShape(const StreamHeader& header) {
  const size_t m = PadMultiple(header.bdct());
  const size_t h = (header.true_height + m - 1) / m;
  const size_t w = (header.true_width + m - 1) / m;
  // Both paths end at m/32 of the padded size: m/16 from the network, halved
  // again by the block DCT when it is on.
  return {header.n, 2 * h, 2 * w};
}

CodedStream EncodeToStream(const Tensor& image, const CodecConfig& cfg) {
  cfg.Validate();
  if (image.channels() != 3 || image.empty()) {
    ThrowInvalid("encode: expected a non-empty 3-channel image");
  }
  if (image.height() > kMaxImageDimension ||
      image.width() > kMaxImageDimension ||
      uint64_t{image.height()} * image.width() > kMaxImagePixels) {
    ThrowInvalid("encode: image exceeds the stream size limits");
  }
  const WeightProfile& profile = cfg.profile ? *cfg.profile : IdentityProfile();

  Tensor y = Stage("pad", [&] { return PadToMultiple(image, PadMultiple(cfg.bdct)); });
  y = Stage("network", [&] { return NetworkForward(y, profile, cfg.mode); });
  if (!y.AllFinite()) ThrowCodec("network: non-finite latent");
  y = Stage("squeeze", [&] { return SqueezeForward(y, cfg.n); });
  if (cfg.bdct) y = Stage("bdct", [&] { return BdctForward(y); });
  if (cfg.latent_scale != 1.0) {
    for (double& v : y.data()) v *= cfg.latent_scale;
  }

  CodedStream s;
  s.side_info = Stage("side_info", [&] { return EstimateSideInfo(y); });
  const QuantizedLatents q = Stage("quantize", [&] { return Quantize(y); });
  const std::vector<CdfTable> tables =
      Stage("tables", [&] { return BuildTables(s.side_info); });
  s.payload = Stage("rans_encode", [&] {
    return RansEncode(q.values, tables, q.plane_size());
  });
  if (s.payload.size() > std::numeric_limits<uint32_t>::max()) {
    ThrowCodec("rans_encode: payload exceeds 4 GiB");
  }

  StreamHeader& h = s.header;
  h.flags = static_cast<uint8_t>((cfg.bdct ? kFlagBdct : 0) |
                                 (cfg.mode == DownscaleMode::kPixelShuffle
                                      ? kFlagPixelShuffle
                                      : 0));
  h.true_width = static_cast<uint32_t>(image.width());
  h.true_height = static_cast<uint32_t>(image.height());
  h.n = static_cast<uint16_t>(cfg.n);
  h.profile = profile.kind();
  h.seed = profile.kind() == ProfileKind::kSeeded ? profile.seed() : 0;
  h.weights_hash =
      profile.kind() == ProfileKind::kFile ? profile.weights_hash() : 0;
  h.payload_len = static_cast<uint32_t>(s.payload.size());
  return s;
}

std::vector<uint8_t> Encode(const Tensor& image, const CodecConfig& cfg) {
  const CodedStream s = EncodeToStream(image, cfg);
  return Stage("write_stream", [&] { return WriteStream(s); });
}

std::vector<uint8_t> EncodeFile(const std::filesystem::path& path,
                                const CodecConfig& cfg) {
  auto [image, meta] = Stage("load", [&] { return LoadImage(path); });
  return Encode(image, cfg);
}

Tensor Decode(std::span<const uint8_t> bytes, const DecodeOptions& opts) {
  if (!ValidScale(opts.latent_scale)) {
    ThrowInvalid("decode: latent_scale must be positive and finite");
  }
  const CodedStream s = Stage("read_stream", [&] { return ReadStream(bytes); });
  const StreamHeader& h = s.header;

  std::optional<WeightProfile> seeded;
  const WeightProfile* profile = nullptr;
  switch (h.profile) {
    case ProfileKind::kIdentity:
      profile = &IdentityProfile();
      break;
    case ProfileKind::kSeeded:
      if (opts.weights != nullptr &&
          opts.weights->kind() == ProfileKind::kSeeded &&
          opts.weights->seed() == h.seed) {
        profile = opts.weights;
        break;
      }
      seeded = Stage("weights", [&] { return WeightProfile::Seeded(h.seed); });
      profile = &*seeded;
      break;
    case ProfileKind::kFile:
      if (opts.weights == nullptr) {
        ThrowCodec("weights: stream was encoded with a weights file; pass it "
                   "to the decoder");
      }
      if (opts.weights->kind() != ProfileKind::kFile ||
          opts.weights->weights_hash() != h.weights_hash) {
        ThrowCodec("weights: hash mismatch with the stream");
      }
      profile = opts.weights;
      break;
  }

  const LatentShape shape = CodedLatentShape(h);
  const std::vector<CdfTable> tables =
      Stage("tables", [&] { return BuildTables(s.side_info); });
  const std::vector<int32_t> symbols = Stage("rans_decode", [&] {
    return RansDecode(s.payload, tables, shape.height * shape.width,
                      shape.symbols());
  });

  std::vector<double> values(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) {
    values[i] = static_cast<double>(symbols[i]) / opts.latent_scale;
  }
  Tensor y(shape.channels, shape.height, shape.width, std::move(values));
  if (h.bdct()) y = Stage("bdct_inverse", [&] { return BdctInverse(y); });
  y = Stage("squeeze_inverse", [&] { return SqueezeInverse(y); });
  const DownscaleMode mode =
      h.pixel_shuffle() ? DownscaleMode::kPixelShuffle : DownscaleMode::kHaar;
  Tensor x = Stage("network_inverse",
                   [&] { return NetworkInverse(y, *profile, mode); });
  if (!x.AllFinite()) ThrowCodec("network_inverse: non-finite reconstruction");
  x = Stage("crop", [&] { return Crop(x, h.meta()); });
  for (double& v : x.data()) v = std::clamp(v, 0.0, 1.0);
  return x;
}

RdPoint RoundtripReport(const Tensor& image, const CodecConfig& cfg) {
  const CodedStream s = EncodeToStream(image, cfg);
  const std::vector<uint8_t> bytes =
      Stage("write_stream", [&] { return WriteStream(s); });
  DecodeOptions opts;
  opts.weights = cfg.profile;
  opts.latent_scale = cfg.latent_scale;
  const Tensor decoded = Decode(bytes, opts);

  const ImageMeta meta = s.header.meta();
  RdPoint p;
  p.n = cfg.n;
  p.lambda = cfg.lambda;
  p.bpp = MeasuredBpp(bytes.size(), meta);
  p.bpp_y = MeasuredBpp(s.payload.size(), meta);
  p.bpp_z = MeasuredBpp(bytes.size() - s.payload.size(), meta);
  const double mse = MeanSquaredError(image, decoded);
  p.mse_255 = mse * 255.0 * 255.0;
  p.psnr_db = Psnr(image, decoded);
  if (std::min(image.height(), image.width()) >= kMsSsimMinSide) {
    p.ms_ssim = std::clamp(MsSsim(image, decoded), 0.0, 1.0);
    p.msssim_db = MsSsimDb(p.ms_ssim);
  } else {
    p.ms_ssim = std::numeric_limits<double>::quiet_NaN();
    p.msssim_db = std::numeric_limits<double>::quiet_NaN();
  }
  p.rd_score = RdScore(cfg.lambda, p.mse_255, p.bpp_y, p.bpp_z);
  return p;
}

}  // namespace itic
