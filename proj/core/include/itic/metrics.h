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

#ifndef ITIC_METRICS_H_
#define ITIC_METRICS_H_

#include <cstddef>

#include "itic/tensor.h"

namespace itic {

inline constexpr double kPsnrCap = 100.0;

// Mean squared error on the [0, 1] scale.
double MeanSquaredError(const Tensor& x, const Tensor& y);

// 10 log10(1 / MSE) with inputs on the [0, 1] scale; 100 dB when MSE == 0.
double Psnr(const Tensor& x, const Tensor& y);

// Smallest spatial side MS-SSIM accepts: five dyadic scales of an 11-tap
// window.
inline constexpr size_t kMsSsimMinSide = 176;

// Five-scale MS-SSIM (Gaussian window 11, sigma 1.5, K1 0.01, K2 0.03, data
// range 1, valid filtering, 2x2 average-pool between scales with zero padding
// of odd sides). Evaluated per channel, negative terms clamped to zero, then
// averaged over channels. Throws kInvalidArgument when min(H, W) < 176.
double MsSsim(const Tensor& x, const Tensor& y);

// -10 log10(1 - v); 100 when v == 1. Throws for v > 1.
double MsSsimDb(double v);

// lambda * mse + bpp_y + bpp_z. mse is expected on the 0..255 scale.
double RdScore(double lambda, double mse, double bpp_y, double bpp_z);

struct RdPoint {
  double bpp = 0.0;
  double bpp_y = 0.0;  // payload share
  double bpp_z = 0.0;  // header + side info + CRC share
  double psnr_db = 0.0;
  double mse_255 = 0.0;
  double ms_ssim = 0.0;  // clamped to [0, 1]
  double msssim_db = 0.0;
  double rd_score = 0.0;
  size_t n = 0;
  double lambda = 0.0;
};

}  // namespace itic

#endif  // ITIC_METRICS_H_
