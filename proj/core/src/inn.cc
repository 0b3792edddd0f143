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

#include "itic/inn.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "itic/error.h"
#include "itic/transforms.h"

namespace itic {

namespace {

using RowMatrixF =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// im2col for a 3x3 kernel with zero padding: row (ci * 9 + ky * 3 + kx),
// column (y * w + x).
RowMatrixF Im2Col(const float* in, size_t channels, size_t h, size_t w) {
  RowMatrixF cols(static_cast<Eigen::Index>(channels * 9),
                  static_cast<Eigen::Index>(h * w));
  for (size_t ci = 0; ci < channels; ++ci) {
    const float* plane = in + ci * h * w;
    for (int ky = 0; ky < 3; ++ky) {
      for (int kx = 0; kx < 3; ++kx) {
        float* row = cols.row(static_cast<Eigen::Index>(ci * 9 + ky * 3 + kx))
                         .data();
        for (size_t y = 0; y < h; ++y) {
          const long sy = static_cast<long>(y) + ky - 1;
          float* dst = row + y * w;
          if (sy < 0 || sy >= static_cast<long>(h)) {
            std::fill(dst, dst + w, 0.0f);
            continue;
          }
          const float* src = plane + sy * w;
          for (size_t x = 0; x < w; ++x) {
            const long sx = static_cast<long>(x) + kx - 1;
            dst[x] = (sx < 0 || sx >= static_cast<long>(w)) ? 0.0f : src[sx];
          }
        }
      }
    }
  }
  return cols;
}

constexpr size_t kTile = 16;
using Tile = Eigen::Array<float, kTile, 1>;

// dst[p..n) = sum_k w[k] * cols[k][p..n), accumulated in k order.
void DotTail(const float* w, const float* cols, size_t k_len, size_t n,
             size_t p, float* dst) {
  for (size_t q = p; q < n; ++q) {
    float acc = 0.0f;
    for (size_t k = 0; k < k_len; ++k) acc += w[k] * cols[k * n + q];
    dst[q] = acc;
  }
}

// R output rows starting at o: full 16-pixel tiles, then a scalar tail.
// R independent accumulators keep the FMA pipes busy.
template <size_t R>
void KernelRows(const float* weight, const float* cols, size_t o,
                size_t k_len, size_t n, float* out) {
  const float* w = weight + o * k_len;
  size_t p = 0;
  for (; p + kTile <= n; p += kTile) {
    Tile a[R];
    for (Tile& t : a) t.setZero();
    for (size_t k = 0; k < k_len; ++k) {
      const Tile c = Eigen::Map<const Tile>(cols + k * n + p);
      for (size_t r = 0; r < R; ++r) a[r] += w[r * k_len + k] * c;
    }
    for (size_t r = 0; r < R; ++r) {
      Eigen::Map<Tile>(out + (o + r) * n + p) = a[r];
    }
  }
  for (size_t r = 0; r < R; ++r) {
    DotTail(w + r * k_len, cols, k_len, n, p, out + (o + r) * n);
  }
}

// out (conv.out x h*w) = conv(in). Zero-parameter convs produce zeros.
RowMatrixF ApplyConv(const Conv3x3& conv, const float* in, size_t h,
                     size_t w) {
  const size_t n = h * w;
  RowMatrixF out = RowMatrixF::Zero(static_cast<Eigen::Index>(conv.out),
                                    static_cast<Eigen::Index>(n));
  if (!conv.weight.empty()) {
    // The latents are spatially small, so a packed GEMM mostly pays for
    // repacking the kernel; streaming kernel rows against im2col is faster.
    const RowMatrixF cols = Im2Col(in, conv.in, h, w);
    const size_t k_len = conv.in * 9;
    size_t o = 0;
    for (; o + 12 <= conv.out; o += 12) {
      KernelRows<12>(conv.weight.data(), cols.data(), o, k_len, n, out.data());
    }
    for (; o + 4 <= conv.out; o += 4) {
      KernelRows<4>(conv.weight.data(), cols.data(), o, k_len, n, out.data());
    }
    for (; o < conv.out; ++o) {
      KernelRows<1>(conv.weight.data(), cols.data(), o, k_len, n, out.data());
    }
  }
  if (!conv.bias.empty()) {
    for (Eigen::Index o = 0; o < out.rows(); ++o) {
      out.row(o).array() += conv.bias[static_cast<size_t>(o)];
    }
  }
  return out;
}

void RequireChannels(const Tensor& t, size_t channels, const char* op) {
  if (t.channels() != channels) {
    ThrowCodec(std::string(op) + ": expected " + std::to_string(channels) +
               " channels, got " + std::to_string(t.channels()));
  }
}

// s -> s_clamp * tanh(s / s_clamp), in place.
void ClampScale(std::vector<double>& s, double s_clamp) {
  for (double& v : s) v = s_clamp * std::tanh(v / s_clamp);
}

}  // namespace

std::vector<double> EvaluateBottleneck(const Bottleneck& f, const Tensor& x,
                                       size_t first) {
  const size_t h = x.height();
  const size_t w = x.width();
  const size_t hw = h * w;
  if (first + f.reduce.in > x.channels()) {
    ThrowCodec("EvaluateBottleneck: channel range out of bounds");
  }
  if (f.IsZero()) return std::vector<double>(f.expand.out * hw, 0.0);

  std::vector<float> in(f.reduce.in * hw);
  const auto src = x.data().subspan(first * hw, f.reduce.in * hw);
  std::transform(src.begin(), src.end(), in.begin(),
                 [](double v) { return static_cast<float>(v); });

  RowMatrixF mid = ApplyConv(f.reduce, in.data(), h, w);
  mid = mid.unaryExpr([](float v) { return v >= 0.0f ? v : kLeakySlope * v; });
  const RowMatrixF out = ApplyConv(f.expand, mid.data(), h, w);
  return std::vector<double>(out.data(), out.data() + out.size());
}

Tensor CouplingForward(const Tensor& u, const CouplingParams& p) {
  RequireChannels(u, p.channels, "CouplingForward");
  const size_t hw = u.plane_size();
  const size_t lo = p.split * hw;  // elements in the first part
  Tensor v = u;
  auto vd = v.data();

  // v1 = u1 * exp(s2(u2)) + t2(u2)
  if (!p.s2.IsZero() || !p.t2.IsZero()) {
    std::vector<double> s2 = EvaluateBottleneck(p.s2, u, p.split);
    const std::vector<double> t2 = EvaluateBottleneck(p.t2, u, p.split);
    ClampScale(s2, p.s_clamp);
    for (size_t i = 0; i < lo; ++i) vd[i] = vd[i] * std::exp(s2[i]) + t2[i];
  }
  // v2 = u2 * exp(s1(v1)) + t1(v1)
  if (!p.s1.IsZero() || !p.t1.IsZero()) {
    std::vector<double> s1 = EvaluateBottleneck(p.s1, v, 0);
    const std::vector<double> t1 = EvaluateBottleneck(p.t1, v, 0);
    ClampScale(s1, p.s_clamp);
    for (size_t i = 0; i < s1.size(); ++i) {
      vd[lo + i] = vd[lo + i] * std::exp(s1[i]) + t1[i];
    }
  }
  return v;
}

Tensor CouplingInverse(const Tensor& v, const CouplingParams& p) {
  RequireChannels(v, p.channels, "CouplingInverse");
  const size_t hw = v.plane_size();
  const size_t lo = p.split * hw;
  Tensor u = v;
  auto ud = u.data();

  // u2 = (v2 - t1(v1)) * exp(-s1(v1))
  if (!p.s1.IsZero() || !p.t1.IsZero()) {
    std::vector<double> s1 = EvaluateBottleneck(p.s1, v, 0);
    const std::vector<double> t1 = EvaluateBottleneck(p.t1, v, 0);
    ClampScale(s1, p.s_clamp);
    for (size_t i = 0; i < s1.size(); ++i) {
      ud[lo + i] = (ud[lo + i] - t1[i]) * std::exp(-s1[i]);
    }
  }
  // u1 = (v1 - t2(u2)) * exp(-s2(u2))
  if (!p.s2.IsZero() || !p.t2.IsZero()) {
    std::vector<double> s2 = EvaluateBottleneck(p.s2, u, p.split);
    const std::vector<double> t2 = EvaluateBottleneck(p.t2, u, p.split);
    ClampScale(s2, p.s_clamp);
    for (size_t i = 0; i < lo; ++i) {
      ud[i] = (ud[i] - t2[i]) * std::exp(-s2[i]);
    }
  }
  return u;
}

Tensor BlockForward(const Tensor& t, const BlockWeights& block,
                    DownscaleMode mode) {
  Tensor x = mode == DownscaleMode::kHaar ? HaarForward(t) : PixelShuffleDown(t);
  x = Conv1x1Forward(x, block.mix);
  for (const CouplingParams& c : block.couplings) x = CouplingForward(x, c);
  return x;
}

Tensor BlockInverse(const Tensor& t, const BlockWeights& block,
                    DownscaleMode mode) {
  Tensor x = t;
  for (auto it = block.couplings.rbegin(); it != block.couplings.rend(); ++it) {
    x = CouplingInverse(x, *it);
  }
  x = Conv1x1Inverse(x, block.mix);
  return mode == DownscaleMode::kHaar ? HaarInverse(x) : PixelShuffleUp(x);
}

Tensor NetworkForward(const Tensor& image, const WeightProfile& profile,
                      DownscaleMode mode) {
  if (image.height() % 16 != 0 || image.width() % 16 != 0) {
    ThrowCodec("NetworkForward: spatial dims must be multiples of 16");
  }
  Tensor x = image;
  for (size_t b = 0; b < kNumBlocks; ++b) {
    x = BlockForward(x, profile.block(b), mode);
  }
  return x;
}

Tensor NetworkInverse(const Tensor& latent, const WeightProfile& profile,
                      DownscaleMode mode) {
  Tensor x = latent;
  for (size_t b = kNumBlocks; b-- > 0;) {
    x = BlockInverse(x, profile.block(b), mode);
  }
  return x;
}

Tensor SqueezeForward(const Tensor& t, size_t n) {
  if (n == 0 || t.channels() % n != 0) {
    ThrowCodec("SqueezeForward: " + std::to_string(n) + " does not divide " +
               std::to_string(t.channels()) + " channels");
  }
  if (n == t.channels()) return t;
  const size_t group = t.channels() / n;
  const size_t hw = t.plane_size();
  Tensor out(n, t.height(), t.width());
  for (size_t g = 0; g < n; ++g) {
    // Mean taken relative to the first member so constant groups are exact.
    auto dst = out.plane(g);
    auto first = t.plane(g * group);
    for (size_t k = 1; k < group; ++k) {
      auto src = t.plane(g * group + k);
      for (size_t i = 0; i < hw; ++i) dst[i] += src[i] - first[i];
    }
    for (size_t i = 0; i < hw; ++i) {
      dst[i] = first[i] + dst[i] / static_cast<double>(group);
    }
  }
  return out;
}

Tensor SqueezeInverse(const Tensor& t, size_t full_channels) {
  if (t.channels() == 0 || full_channels % t.channels() != 0) {
    ThrowCodec("SqueezeInverse: " + std::to_string(t.channels()) +
               " does not divide " + std::to_string(full_channels));
  }
  if (t.channels() == full_channels) return t;
  const size_t group = full_channels / t.channels();
  Tensor out(full_channels, t.height(), t.width());
  for (size_t g = 0; g < t.channels(); ++g) {
    auto src = t.plane(g);
    for (size_t k = 0; k < group; ++k) {
      auto dst = out.plane(g * group + k);
      std::copy(src.begin(), src.end(), dst.begin());
    }
  }
  return out;
}

}  // namespace itic
