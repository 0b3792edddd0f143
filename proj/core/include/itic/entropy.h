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

#ifndef ITIC_ENTROPY_H_
#define ITIC_ENTROPY_H_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "itic/tensor.h"

namespace itic {

// ---------------------------------------------------------------------------
// Quantization

// Integer latents, channel-major like Tensor.
struct QuantizedLatents {
  size_t channels = 0;
  size_t height = 0;
  size_t width = 0;
  std::vector<int32_t> values;

  size_t plane_size() const { return height * width; }
  friend bool operator==(const QuantizedLatents&,
                         const QuantizedLatents&) = default;
};

// Round half away from zero. Throws kCodec on non-finite input or values
// outside the int32 range.
QuantizedLatents Quantize(const Tensor& y);

// Integers back to doubles (quantization step is 1).
Tensor Dequantize(const QuantizedLatents& q);

// ---------------------------------------------------------------------------
// Side information: one (mean, scale) pair per latent channel.

inline constexpr double kSigmaMin = 0.11;
inline constexpr double kSigmaMax = 256.0;
inline constexpr int32_t kMeanSteps = 256;     // mu_q units per latent unit
inline constexpr int32_t kLogSigmaSteps = 16;  // log_sigma_q units per octave
inline constexpr int16_t kLogSigmaQMin = -51;  // 2^(-51/16) ~ 0.1098 -> floor
inline constexpr int16_t kLogSigmaQMax = 128;  // 2^8 = 256
inline constexpr int32_t kMeanQLimit = 1 << 30;

struct ChannelStats {
  int32_t mu_q = 0;
  int16_t log_sigma_q = kLogSigmaQMin;

  double mu() const;     // mu_q / 256
  double sigma() const;  // clamp(2^(log_sigma_q / 16), 0.11, 256)

  friend bool operator==(const ChannelStats&, const ChannelStats&) = default;
};

using SideInfo = std::vector<ChannelStats>;

ChannelStats QuantizeStats(double mu, double sigma);

// Per channel: spatial mean and max(0.11, spatial standard deviation) of the
// unquantized latent, snapped to the side-info grid.
SideInfo EstimateSideInfo(const Tensor& y);

// ---------------------------------------------------------------------------
// Discretized Gaussian frequency tables.

inline constexpr uint32_t kProbBits = 16;
inline constexpr uint32_t kProbScale = 1u << kProbBits;

// Symbols s_min..s_max. The extreme symbols also carry the folded tails, so
// s_min stands for (-inf, s_min] and s_max for [s_max, +inf).
struct CdfTable {
  int32_t s_min = 0;
  int32_t s_max = 0;
  // cdf[i] = sum of freq over the first i symbols; cdf.back() == 2^16.
  std::vector<uint32_t> cdf;

  size_t size() const { return cdf.empty() ? 0 : cdf.size() - 1; }
  uint32_t start(int32_t s) const { return cdf[s - s_min]; }
  uint32_t freq(int32_t s) const { return cdf[s - s_min + 1] - cdf[s - s_min]; }

  friend bool operator==(const CdfTable&, const CdfTable&) = default;
};

// [floor(mu - 8 sigma), ceil(mu + 8 sigma)].
std::pair<int32_t, int32_t> GaussianSymbolRange(double mu, double sigma);

// Probability mass of each symbol in [s_min, s_max] under N(mu, sigma^2) with
// unit-width bins; the first/last bins absorb the tails.
std::vector<double> GaussianBinMasses(double mu, double sigma, int32_t s_min,
                                      int32_t s_max);

// Integer frequencies summing to exactly 2^16, each >= 1. Starts from
// max(1, floor(p * 2^16)); the remaining difference is settled one count at a
// time by largest fractional remainder (ties: lower symbol first).
CdfTable BuildCdf(double mu, double sigma, int32_t s_min, int32_t s_max);
CdfTable BuildCdf(double mu, double sigma);
CdfTable BuildCdf(const ChannelStats& stats);

// Complementary error function. Power series below 2, a fixed-depth continued
// fraction above, built only from + - * / and a local exp so tables come out
// identical on every IEEE-754 platform.
double Erfc(double x);

// P(X > z) for a standard normal X.
double NormalUpperTail(double z);

}  // namespace itic

#endif  // ITIC_ENTROPY_H_
