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

#include "itic/transforms.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "itic/error.h"

namespace itic {

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string Shape(const Tensor& t) {
  return std::to_string(t.channels()) + "x" + std::to_string(t.height()) +
         "x" + std::to_string(t.width());
}

void RequireEvenSpatial(const Tensor& t, const char* op) {
  if (t.height() % 2 != 0 || t.width() % 2 != 0) {
    ThrowCodec(std::string(op) + ": spatial dims must be even, got " +
               Shape(t));
  }
}

void RequireChannelsDiv4(const Tensor& t, const char* op) {
  if (t.channels() % 4 != 0) {
    ThrowCodec(std::string(op) + ": channels must be divisible by 4, got " +
               Shape(t));
  }
}

}  // namespace

Tensor HaarForward(const Tensor& t) {
  RequireEvenSpatial(t, "HaarForward");
  const size_t channels = t.channels();
  const size_t h = t.height() / 2;
  const size_t w = t.width() / 2;
  Tensor out(4 * channels, h, w);
  for (size_t c = 0; c < channels; ++c) {
    for (size_t i = 0; i < h; ++i) {
      for (size_t j = 0; j < w; ++j) {
        const double a = t.at(c, 2 * i, 2 * j);
        const double b = t.at(c, 2 * i, 2 * j + 1);
        const double cc = t.at(c, 2 * i + 1, 2 * j);
        const double d = t.at(c, 2 * i + 1, 2 * j + 1);
        out.at(c, i, j) = (a + b + cc + d) / 4;
        out.at(channels + c, i, j) = (a + b - cc - d) / 4;
        out.at(2 * channels + c, i, j) = (a - b + cc - d) / 4;
        out.at(3 * channels + c, i, j) = (a - b - cc + d) / 4;
      }
    }
  }
  return out;
}

Tensor HaarInverse(const Tensor& t) {
  RequireChannelsDiv4(t, "HaarInverse");
  const size_t channels = t.channels() / 4;
  const size_t h = t.height();
  const size_t w = t.width();
  Tensor out(channels, 2 * h, 2 * w);
  for (size_t c = 0; c < channels; ++c) {
    for (size_t i = 0; i < h; ++i) {
      for (size_t j = 0; j < w; ++j) {
        const double ll = t.at(c, i, j);
        const double hv = t.at(channels + c, i, j);
        const double hh = t.at(2 * channels + c, i, j);
        const double hd = t.at(3 * channels + c, i, j);
        out.at(c, 2 * i, 2 * j) = ll + hv + hh + hd;
        out.at(c, 2 * i, 2 * j + 1) = ll + hv - hh - hd;
        out.at(c, 2 * i + 1, 2 * j) = ll - hv + hh - hd;
        out.at(c, 2 * i + 1, 2 * j + 1) = ll - hv - hh + hd;
      }
    }
  }
  return out;
}

Tensor PixelShuffleDown(const Tensor& t) {
  RequireEvenSpatial(t, "PixelShuffleDown");
  const size_t channels = t.channels();
  const size_t h = t.height() / 2;
  const size_t w = t.width() / 2;
  Tensor out(4 * channels, h, w);
  for (size_t k = 0; k < 4; ++k) {
    const size_t dy = k / 2;
    const size_t dx = k % 2;
    for (size_t c = 0; c < channels; ++c) {
      for (size_t i = 0; i < h; ++i) {
        for (size_t j = 0; j < w; ++j) {
          out.at(k * channels + c, i, j) = t.at(c, 2 * i + dy, 2 * j + dx);
        }
      }
    }
  }
  return out;
}

Tensor PixelShuffleUp(const Tensor& t) {
  RequireChannelsDiv4(t, "PixelShuffleUp");
  const size_t channels = t.channels() / 4;
  const size_t h = t.height();
  const size_t w = t.width();
  Tensor out(channels, 2 * h, 2 * w);
  for (size_t k = 0; k < 4; ++k) {
    const size_t dy = k / 2;
    const size_t dx = k % 2;
    for (size_t c = 0; c < channels; ++c) {
      for (size_t i = 0; i < h; ++i) {
        for (size_t j = 0; j < w; ++j) {
          out.at(c, 2 * i + dy, 2 * j + dx) = t.at(k * channels + c, i, j);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Conv1x1Weights Conv1x1Weights::Identity(size_t channels) {
  Conv1x1Weights w;
  w.channels_ = channels;
  w.is_identity_ = true;
  w.matrix_.assign(channels * channels, 0.0);
  for (size_t i = 0; i < channels; ++i) w.matrix_[i * channels + i] = 1.0;
  w.inverse_ = w.matrix_;
  return w;
}

Conv1x1Weights::Conv1x1Weights(size_t channels, std::vector<double> matrix)
    : channels_(channels), matrix_(std::move(matrix)) {
  if (channels == 0 || matrix_.size() != channels * channels) {
    ThrowInvalid("Conv1x1Weights: matrix must be " + std::to_string(channels) +
                 "x" + std::to_string(channels));
  }
  for (double v : matrix_) {
    if (!std::isfinite(v)) ThrowCodec("Conv1x1Weights: non-finite entry");
  }
  is_identity_ = true;
  for (size_t r = 0; r < channels && is_identity_; ++r) {
    for (size_t c = 0; c < channels; ++c) {
      if (matrix_[r * channels + c] != (r == c ? 1.0 : 0.0)) {
        is_identity_ = false;
        break;
      }
    }
  }
  if (is_identity_) {
    inverse_ = matrix_;
    return;
  }
  const Eigen::Index n = static_cast<Eigen::Index>(channels);
  Eigen::Map<const RowMatrix> m(matrix_.data(), n, n);
  Eigen::PartialPivLU<RowMatrix> lu(m);
  const double det = lu.determinant();
  if (!(std::abs(det) > 1e-8)) {
    ThrowCodec("Conv1x1Weights: matrix is singular (|det| = " +
               std::to_string(std::abs(det)) + ")");
  }
  inverse_.resize(channels * channels);
  Eigen::Map<RowMatrix>(inverse_.data(), n, n) = lu.inverse();
  const double residual = InverseResidual();
  if (!(residual < 1e-6)) {
    ThrowCodec("Conv1x1Weights: inverse residual " + std::to_string(residual) +
               " exceeds 1e-6");
  }
}

double Conv1x1Weights::InverseResidual() const {
  const Eigen::Index n = static_cast<Eigen::Index>(channels_);
  Eigen::Map<const RowMatrix> m(matrix_.data(), n, n);
  Eigen::Map<const RowMatrix> inv(inverse_.data(), n, n);
  const RowMatrix r = m * inv - RowMatrix::Identity(n, n);
  return r.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace {

Tensor ApplyChannelMatrix(const Tensor& t, const std::vector<double>& matrix,
                          size_t channels, const char* op) {
  if (t.channels() != channels) {
    ThrowCodec(std::string(op) + ": tensor has " +
               std::to_string(t.channels()) + " channels, weights expect " +
               std::to_string(channels));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(channels);
  const Eigen::Index hw = static_cast<Eigen::Index>(t.plane_size());
  Tensor out(t.channels(), t.height(), t.width());
  Eigen::Map<const RowMatrix> m(matrix.data(), n, n);
  Eigen::Map<const RowMatrix> in(t.data().data(), n, hw);
  Eigen::Map<RowMatrix> dst(out.data().data(), n, hw);
  dst.noalias() = m * in;
  return out;
}

}  // namespace

Tensor Conv1x1Forward(const Tensor& t, const Conv1x1Weights& w) {
  if (w.is_identity()) {
    if (t.channels() != w.channels()) {
      ThrowCodec("Conv1x1Forward: channel mismatch");
    }
    return t;
  }
  return ApplyChannelMatrix(t, w.matrix(), w.channels(), "Conv1x1Forward");
}

Tensor Conv1x1Inverse(const Tensor& t, const Conv1x1Weights& w) {
  if (w.is_identity()) {
    if (t.channels() != w.channels()) {
      ThrowCodec("Conv1x1Inverse: channel mismatch");
    }
    return t;
  }
  return ApplyChannelMatrix(t, w.inverse(), w.channels(), "Conv1x1Inverse");
}

// ---------------------------------------------------------------------------

namespace {

// alpha(0) = 1/2, alpha(u > 0) = sqrt(1/2); entries alpha(u) cos((2x+1)u pi/8).
constexpr double kC1 = 0.65328148243818826;  // sqrt(1/2) cos(pi/8)
constexpr double kC2 = 0.5;                  // sqrt(1/2) cos(2pi/8)
constexpr double kC3 = 0.27059805007309851;  // sqrt(1/2) cos(3pi/8)

constexpr double kDct4[4][4] = {
    {0.5, 0.5, 0.5, 0.5},
    {kC1, kC3, -kC3, -kC1},
    {kC2, -kC2, -kC2, kC2},
    {kC3, -kC1, kC1, -kC3},
};

}  // namespace

const double (&Dct4Basis())[4][4] { return kDct4; }

Tensor BdctForward(const Tensor& t) {
  if (t.height() % 4 != 0 || t.width() % 4 != 0) {
    ThrowCodec("BdctForward: spatial dims must be multiples of 4, got " +
               Shape(t));
  }
  const size_t bh = t.height() / 4;
  const size_t bw = t.width() / 4;
  Tensor out(t.channels(), 2 * bh, 2 * bw);
  for (size_t c = 0; c < t.channels(); ++c) {
    for (size_t bi = 0; bi < bh; ++bi) {
      for (size_t bj = 0; bj < bw; ++bj) {
        // Rows first: r[y][v] = sum_x X[y][x] D[v][x], v in {0, 1}.
        double r[4][2];
        for (size_t y = 0; y < 4; ++y) {
          const double* row = t.plane(c).data() + (4 * bi + y) * t.width() + 4 * bj;
          for (size_t v = 0; v < 2; ++v) {
            r[y][v] = row[0] * kDct4[v][0] + row[1] * kDct4[v][1] +
                      row[2] * kDct4[v][2] + row[3] * kDct4[v][3];
          }
        }
        for (size_t u = 0; u < 2; ++u) {
          for (size_t v = 0; v < 2; ++v) {
            out.at(c, 2 * bi + u, 2 * bj + v) =
                kDct4[u][0] * r[0][v] + kDct4[u][1] * r[1][v] +
                kDct4[u][2] * r[2][v] + kDct4[u][3] * r[3][v];
          }
        }
      }
    }
  }
  return out;
}

Tensor BdctInverse(const Tensor& t) {
  if (t.height() % 2 != 0 || t.width() % 2 != 0) {
    ThrowCodec("BdctInverse: spatial dims must be multiples of 2, got " +
               Shape(t));
  }
  const size_t bh = t.height() / 2;
  const size_t bw = t.width() / 2;
  Tensor out(t.channels(), 4 * bh, 4 * bw);
  for (size_t c = 0; c < t.channels(); ++c) {
    for (size_t bi = 0; bi < bh; ++bi) {
      for (size_t bj = 0; bj < bw; ++bj) {
        const double k00 = t.at(c, 2 * bi, 2 * bj);
        const double k01 = t.at(c, 2 * bi, 2 * bj + 1);
        const double k10 = t.at(c, 2 * bi + 1, 2 * bj);
        const double k11 = t.at(c, 2 * bi + 1, 2 * bj + 1);
        // Columns: q[y][v] = sum_u D[u][y] K[u][v]; then rows.
        for (size_t y = 0; y < 4; ++y) {
          const double q0 = kDct4[0][y] * k00 + kDct4[1][y] * k10;
          const double q1 = kDct4[0][y] * k01 + kDct4[1][y] * k11;
          double* row = &out.at(c, 4 * bi + y, 4 * bj);
          for (size_t x = 0; x < 4; ++x) {
            row[x] = q0 * kDct4[0][x] + q1 * kDct4[1][x];
          }
        }
      }
    }
  }
  return out;
}

}  // namespace itic
