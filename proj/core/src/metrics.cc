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

#include "itic/metrics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "itic/error.h"

namespace itic {

double MeanSquaredError(const Tensor& x, const Tensor& y) {
  if (!x.SameShape(y)) ThrowInvalid("metrics: shape mismatch");
  if (x.empty()) ThrowInvalid("metrics: empty tensors");
  auto a = x.data();
  auto b = y.data();
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum / static_cast<double>(a.size());
}

double Psnr(const Tensor& x, const Tensor& y) {
  const double mse = MeanSquaredError(x, y);
  if (mse == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(1.0 / mse));
}

namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;
constexpr std::array<double, 5> kScaleWeights = {0.0448, 0.2856, 0.3001,
                                                 0.2363, 0.1333};

struct Plane {
  size_t h = 0;
  size_t w = 0;
  std::vector<double> v;
  double at(size_t y, size_t x) const { return v[y * w + x]; }
};

std::array<double, kWindow> GaussianWindow() {
  std::array<double, kWindow> g{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    g[i] = std::exp(-(d * d) / (2.0 * kWindowSigma * kWindowSigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

// Separable "valid" Gaussian filter: output (h - 10) x (w - 10).
Plane Filter(const Plane& p, const std::array<double, kWindow>& g) {
  Plane rows{p.h, p.w - kWindow + 1, {}};
  rows.v.resize(rows.h * rows.w);
  for (size_t y = 0; y < rows.h; ++y) {
    for (size_t x = 0; x < rows.w; ++x) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += g[k] * p.at(y, x + k);
      rows.v[y * rows.w + x] = s;
    }
  }
  Plane out{p.h - kWindow + 1, rows.w, {}};
  out.v.resize(out.h * out.w);
  for (size_t y = 0; y < out.h; ++y) {
    for (size_t x = 0; x < out.w; ++x) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += g[k] * rows.at(y + k, x);
      out.v[y * out.w + x] = s;
    }
  }
  return out;
}

Plane Multiply(const Plane& a, const Plane& b) {
  Plane out{a.h, a.w, std::vector<double>(a.v.size())};
  for (size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
  return out;
}

// Mean SSIM and mean contrast-structure term at one scale.
std::pair<double, double> SsimAndCs(const Plane& x, const Plane& y,
                                    const std::array<double, kWindow>& g) {
  const Plane mu_x = Filter(x, g);
  const Plane mu_y = Filter(y, g);
  const Plane xx = Filter(Multiply(x, x), g);
  const Plane yy = Filter(Multiply(y, y), g);
  const Plane xy = Filter(Multiply(x, y), g);
  double ssim_sum = 0.0, cs_sum = 0.0;
  for (size_t i = 0; i < mu_x.v.size(); ++i) {
    const double mx = mu_x.v[i], my = mu_y.v[i];
    const double sxx = xx.v[i] - mx * mx;
    const double syy = yy.v[i] - my * my;
    const double sxy = xy.v[i] - mx * my;
    const double cs = (2.0 * sxy + kC2) / (sxx + syy + kC2);
    const double lum = (2.0 * mx * my + kC1) / (mx * mx + my * my + kC1);
    ssim_sum += lum * cs;
    cs_sum += cs;
  }
  const double n = static_cast<double>(mu_x.v.size());
  return {ssim_sum / n, cs_sum / n};
}

// 2x2 mean pooling. An odd side is padded with one zero on each end, so the
// first window straddles the border; padded zeros count in the average.
Plane Downsample(const Plane& p) {
  const size_t pad_y = p.h % 2, pad_x = p.w % 2;
  Plane out{p.h / 2 + pad_y, p.w / 2 + pad_x, {}};
  out.v.resize(out.h * out.w);
  for (size_t y = 0; y < out.h; ++y) {
    for (size_t x = 0; x < out.w; ++x) {
      double s = 0.0;
      for (size_t dy = 0; dy < 2; ++dy) {
        for (size_t dx = 0; dx < 2; ++dx) {
          const ptrdiff_t sy = static_cast<ptrdiff_t>(2 * y + dy) -
                               static_cast<ptrdiff_t>(pad_y);
          const ptrdiff_t sx = static_cast<ptrdiff_t>(2 * x + dx) -
                               static_cast<ptrdiff_t>(pad_x);
          if (sy >= 0 && sx >= 0 && static_cast<size_t>(sy) < p.h &&
              static_cast<size_t>(sx) < p.w) {
            s += p.at(static_cast<size_t>(sy), static_cast<size_t>(sx));
          }
        }
      }
      out.v[y * out.w + x] = s / 4.0;
    }
  }
  return out;
}

double MsSsimPlane(Plane x, Plane y, const std::array<double, kWindow>& g) {
  double result = 1.0;
  for (size_t level = 0; level < kScaleWeights.size(); ++level) {
    const auto [ssim, cs] = SsimAndCs(x, y, g);
    const bool last = level + 1 == kScaleWeights.size();
    const double term = std::max(0.0, last ? ssim : cs);
    result *= std::pow(term, kScaleWeights[level]);
    if (!last) {
      x = Downsample(x);
      y = Downsample(y);
    }
  }
  return result;
}

}  // namespace

double MsSsim(const Tensor& x, const Tensor& y) {
  if (!x.SameShape(y)) ThrowInvalid("MsSsim: shape mismatch");
  if (std::min(x.height(), x.width()) < kMsSsimMinSide) {
    ThrowInvalid("MsSsim: image " + std::to_string(x.height()) + "x" +
                 std::to_string(x.width()) +
                 " too small for 5 scales (min side 176)");
  }
  if (x == y) return 1.0;
  const auto g = GaussianWindow();
  double sum = 0.0;
  for (size_t c = 0; c < x.channels(); ++c) {
    Plane px{x.height(), x.width(), {x.plane(c).begin(), x.plane(c).end()}};
    Plane py{y.height(), y.width(), {y.plane(c).begin(), y.plane(c).end()}};
    sum += MsSsimPlane(std::move(px), std::move(py), g);
  }
  return sum / static_cast<double>(x.channels());
}

double MsSsimDb(double v) {
  if (v > 1.0) ThrowInvalid("MsSsimDb: value above 1");
  if (v == 1.0) return kPsnrCap;
  return std::min(kPsnrCap, -10.0 * std::log10(1.0 - v));
}

double RdScore(double lambda, double mse, double bpp_y, double bpp_z) {
  return lambda * mse + bpp_y + bpp_z;
}

}  // namespace itic
