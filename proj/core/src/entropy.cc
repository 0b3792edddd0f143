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

#include "itic/entropy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "itic/error.h"

namespace itic {

// ---------------------------------------------------------------------------

QuantizedLatents Quantize(const Tensor& y) {
  QuantizedLatents q;
  q.channels = y.channels();
  q.height = y.height();
  q.width = y.width();
  q.values.resize(y.size());
  auto src = y.data();
  constexpr double kLimit = 2147483647.0;
  for (size_t i = 0; i < src.size(); ++i) {
    const double r = std::round(src[i]);
    if (!std::isfinite(r) || r > kLimit || r < -kLimit) {
      ThrowCodec("Quantize: latent value out of range");
    }
    q.values[i] = static_cast<int32_t>(r);
  }
  return q;
}

Tensor Dequantize(const QuantizedLatents& q) {
  std::vector<double> data(q.values.begin(), q.values.end());
  return Tensor(q.channels, q.height, q.width, std::move(data));
}

// ---------------------------------------------------------------------------

namespace {

// 2^(r/16), r = 0..15.
constexpr double kPow2Sixteenths[16] = {
    1.0,
    1.0442737824274138,
    1.0905077326652577,
    1.1387886347566916,
    1.189207115002721,
    1.241857812073484,
    1.2968395546510096,
    1.3542555469368927,
    1.4142135623730951,
    1.4768261459394993,
    1.5422108254079407,
    1.6104903319492543,
    1.681792830507429,
    1.7562521603732995,
    1.8340080864093424,
    1.9152065613971474,
};

}  // namespace

double ChannelStats::mu() const {
  return static_cast<double>(mu_q) / kMeanSteps;
}

double ChannelStats::sigma() const {
  const int q = log_sigma_q;
  const int octave = q >= 0 ? q / 16 : -((15 - q) / 16);
  const int frac = q - 16 * octave;
  const double s = std::ldexp(kPow2Sixteenths[frac], octave);
  return std::clamp(s, kSigmaMin, kSigmaMax);
}

ChannelStats QuantizeStats(double mu, double sigma) {
  ChannelStats s;
  const double mq = std::clamp(std::round(mu * kMeanSteps),
                               -static_cast<double>(kMeanQLimit),
                               static_cast<double>(kMeanQLimit));
  s.mu_q = static_cast<int32_t>(mq);
  const double ls = std::round(std::log2(std::max(sigma, kSigmaMin)) *
                               kLogSigmaSteps);
  s.log_sigma_q = static_cast<int16_t>(
      std::clamp(ls, static_cast<double>(kLogSigmaQMin),
                 static_cast<double>(kLogSigmaQMax)));
  return s;
}

SideInfo EstimateSideInfo(const Tensor& y) {
  SideInfo info(y.channels());
  const double n = static_cast<double>(y.plane_size());
  for (size_t c = 0; c < y.channels(); ++c) {
    auto p = y.plane(c);
    if (p.empty()) {
      info[c] = QuantizeStats(0.0, kSigmaMin);
      continue;
    }
    // Shifted accumulation keeps constant channels exact.
    const double ref = p[0];
    double sum = 0.0, sum_sq = 0.0;
    for (double v : p) {
      const double d = v - ref;
      sum += d;
      sum_sq += d * d;
    }
    const double mean_d = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean_d * mean_d);
    info[c] = QuantizeStats(ref + mean_d, std::sqrt(var));
  }
  return info;
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kInvSqrtPi = 0.56418958354775628;  // 1/sqrt(pi)
constexpr double kTwoOverSqrtPi = 1.1283791670955126;
constexpr double kInvSqrt2 = 0.70710678118654752;

// exp(x) from Cody-Waite reduction and a degree-13 Taylor polynomial.
double LocalExp(double x) {
  if (x < -745.0) return 0.0;
  if (x > 709.0) return std::numeric_limits<double>::infinity();
  constexpr double kLog2e = 1.4426950408889634;
  constexpr double kLn2Hi = 0.6931471803691238;  // low 21 bits zero
  constexpr double kLn2Lo = 1.9082149292705877e-10;
  const double k = std::floor(x * kLog2e + 0.5);
  const double r = (x - k * kLn2Hi) - k * kLn2Lo;
  double p = 1.0;
  for (int n = 13; n >= 1; --n) p = 1.0 + p * r / n;
  return std::ldexp(p, static_cast<int>(k));
}

double ErfSeries(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 40; ++n) {
    term *= -x2 / n;
    sum += term / (2 * n + 1);
  }
  return kTwoOverSqrtPi * sum;
}

double ErfcContinuedFraction(double x) {
  double t = x;
  for (int k = 60; k >= 1; --k) t = x + (0.5 * k) / t;
  return LocalExp(-x * x) * kInvSqrtPi / t;
}

}  // namespace

double Erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - Erfc(-x);
  if (x == std::numeric_limits<double>::infinity()) return 0.0;
  if (x < 2.0) return 1.0 - ErfSeries(x);
  if (x > 27.5) return 0.0;
  return ErfcContinuedFraction(x);
}

double NormalUpperTail(double z) {
  if (z == std::numeric_limits<double>::infinity()) return 0.0;
  if (z == -std::numeric_limits<double>::infinity()) return 1.0;
  return 0.5 * Erfc(z * kInvSqrt2);
}

std::pair<int32_t, int32_t> GaussianSymbolRange(double mu, double sigma) {
  const double lo = std::floor(mu - 8.0 * sigma);
  const double hi = std::ceil(mu + 8.0 * sigma);
  constexpr double kLimit = 2147483647.0;
  if (!(lo >= -kLimit) || !(hi <= kLimit)) {
    ThrowCodec("GaussianSymbolRange: mean out of range");
  }
  return {static_cast<int32_t>(lo), static_cast<int32_t>(hi)};
}

std::vector<double> GaussianBinMasses(double mu, double sigma, int32_t s_min,
                                      int32_t s_max) {
  if (s_min > s_max) ThrowInvalid("GaussianBinMasses: s_min > s_max");
  if (!(sigma > 0.0)) ThrowInvalid("GaussianBinMasses: sigma must be > 0");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const size_t n = static_cast<size_t>(int64_t{s_max} - s_min + 1);
  std::vector<double> p(n);
  for (size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(s_min) + static_cast<double>(i);
    const double z_lo = i == 0 ? -kInf : (s - 0.5 - mu) / sigma;
    const double z_hi = i + 1 == n ? kInf : (s + 0.5 - mu) / sigma;
    // Pick the form that subtracts two small tail masses, mirrored around the
    // mean so symmetric inputs give bit-identical masses.
    if (z_lo >= 0.0) {
      p[i] = NormalUpperTail(z_lo) - NormalUpperTail(z_hi);
    } else if (z_hi <= 0.0) {
      p[i] = NormalUpperTail(-z_hi) - NormalUpperTail(-z_lo);
    } else {
      p[i] = 1.0 - NormalUpperTail(-z_lo) - NormalUpperTail(z_hi);
    }
    p[i] = std::max(p[i], 0.0);
  }
  return p;
}

CdfTable BuildCdf(double mu, double sigma, int32_t s_min, int32_t s_max) {
  if (s_min > s_max) ThrowInvalid("BuildCdf: degenerate range (s_min > s_max)");
  const size_t n = static_cast<size_t>(int64_t{s_max} - s_min + 1);
  if (n > kProbScale) ThrowInvalid("BuildCdf: alphabet larger than 2^16");
  const std::vector<double> p = GaussianBinMasses(mu, sigma, s_min, s_max);

  std::vector<int64_t> freq(n);
  std::vector<double> rem(n);
  int64_t total = 0;
  for (size_t i = 0; i < n; ++i) {
    const double scaled = p[i] * kProbScale;
    const double fl = std::floor(scaled);
    rem[i] = scaled - fl;
    freq[i] = std::max<int64_t>(1, static_cast<int64_t>(fl));
    total += freq[i];
  }

  int64_t diff = int64_t{kProbScale} - total;
  if (diff != 0) {
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    if (diff > 0) {
      std::stable_sort(order.begin(), order.end(),
                       [&](size_t a, size_t b) { return rem[a] > rem[b]; });
      for (size_t k = 0; diff > 0; k = (k + 1) % n, --diff) ++freq[order[k]];
    } else {
      std::stable_sort(order.begin(), order.end(),
                       [&](size_t a, size_t b) { return rem[a] < rem[b]; });
      while (diff < 0) {
        for (size_t k = 0; k < n && diff < 0; ++k) {
          if (freq[order[k]] > 1) {
            --freq[order[k]];
            ++diff;
          }
        }
      }
    }
  }

  CdfTable t;
  t.s_min = s_min;
  t.s_max = s_max;
  t.cdf.resize(n + 1);
  t.cdf[0] = 0;
  for (size_t i = 0; i < n; ++i) {
    t.cdf[i + 1] = t.cdf[i] + static_cast<uint32_t>(freq[i]);
  }
  return t;
}

CdfTable BuildCdf(double mu, double sigma) {
  if (!(sigma >= kSigmaMin)) ThrowInvalid("BuildCdf: sigma below floor");
  const auto [lo, hi] = GaussianSymbolRange(mu, sigma);
  return BuildCdf(mu, sigma, lo, hi);
}

CdfTable BuildCdf(const ChannelStats& stats) {
  return BuildCdf(stats.mu(), stats.sigma());
}

}  // namespace itic
