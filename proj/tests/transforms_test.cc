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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "itic/error.h"
#include "test_util.h"

namespace itic {
namespace {

TEST(HaarTest, ConstantImage) {
  const Tensor t = HaarForward(Tensor(2, 4, 6, 0.25));
  ASSERT_EQ(t.channels(), 8u);
  for (size_t c = 0; c < 8; ++c) {
    for (double v : t.plane(c)) EXPECT_EQ(v, c < 2 ? 0.25 : 0.0);
  }
}

TEST(HaarTest, HandExample) {
  const Tensor t = HaarForward(Tensor(1, 2, 2, {1, 2, 3, 4}));
  EXPECT_EQ(t.at(0, 0, 0), 2.5);
  EXPECT_EQ(t.at(1, 0, 0), -1.0);
  EXPECT_EQ(t.at(2, 0, 0), -0.5);
  EXPECT_EQ(t.at(3, 0, 0), 0.0);
  EXPECT_EQ(HaarInverse(t), Tensor(1, 2, 2, {1, 2, 3, 4}));
}

TEST(HaarTest, ZeroResidualsGiveConstant) {
  Tensor t(4, 3, 3);
  for (double& v : t.plane(0)) v = 0.7;
  const Tensor x = HaarInverse(t);
  for (double v : x.data()) EXPECT_EQ(v, 0.7);
}

TEST(HaarTest, LowPassIsAveragePool) {
  const Tensor x = testing::RandomPixels(3, 10, 12, 5);
  const Tensor t = HaarForward(x);
  for (size_t c = 0; c < 3; ++c) {
    for (size_t i = 0; i < 5; ++i) {
      for (size_t j = 0; j < 6; ++j) {
        const double avg = (x.at(c, 2 * i, 2 * j) + x.at(c, 2 * i, 2 * j + 1) +
                            x.at(c, 2 * i + 1, 2 * j) +
                            x.at(c, 2 * i + 1, 2 * j + 1)) /
                           4.0;
        EXPECT_EQ(t.at(c, i, j), avg);
      }
    }
  }
}

TEST(HaarTest, PixelGridRoundTripIsBitExact) {
  const Tensor x = testing::RandomPixels(3, 16, 18, 6);
  EXPECT_EQ(HaarInverse(HaarForward(x)), x);
}

TEST(HaarTest, ArbitraryRoundTripWithinTolerance) {
  const Tensor x = testing::RandomTensor(3, 16, 16, 7, -3.0, 3.0);
  EXPECT_LT(MaxAbsDiff(HaarInverse(HaarForward(x)), x), 1e-6);
}

TEST(HaarTest, ParityErrors) {
  EXPECT_THROW(HaarForward(Tensor(1, 3, 4)), Error);
  EXPECT_THROW(HaarInverse(Tensor(3, 2, 2)), Error);
}

TEST(PixelShuffleTest, IndexMap) {
  const Tensor t = PixelShuffleDown(Tensor(1, 2, 2, {1, 2, 3, 4}));
  ASSERT_EQ(t.channels(), 4u);
  for (size_t k = 0; k < 4; ++k) EXPECT_EQ(t.at(k, 0, 0), k + 1.0);
}

TEST(PixelShuffleTest, BandMajorLayout) {
  const Tensor x = testing::RandomTensor(3, 4, 4, 8);
  const Tensor t = PixelShuffleDown(x);
  for (size_t k = 0; k < 4; ++k) {
    for (size_t c = 0; c < 3; ++c) {
      EXPECT_EQ(t.at(k * 3 + c, 1, 0), x.at(c, 2 + k / 2, k % 2));
    }
  }
}

TEST(PixelShuffleTest, RoundTripAndConstant) {
  const Tensor x = testing::RandomTensor(3, 8, 6, 9);
  EXPECT_EQ(PixelShuffleUp(PixelShuffleDown(x)), x);
  const Tensor down = PixelShuffleDown(Tensor(2, 4, 4, 0.3));
  for (double v : down.data()) {
    EXPECT_EQ(v, 0.3);
  }
  EXPECT_THROW(PixelShuffleDown(Tensor(1, 3, 2)), Error);
  EXPECT_THROW(PixelShuffleUp(Tensor(3, 2, 2)), Error);
}

std::vector<double> RandomOrthogonal(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> q(n * n);
  for (double& v : q) v = g(rng);
  // Modified Gram-Schmidt over rows.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      double dot = 0.0;
      for (size_t k = 0; k < n; ++k) dot += q[i * n + k] * q[j * n + k];
      for (size_t k = 0; k < n; ++k) q[i * n + k] -= dot * q[j * n + k];
    }
    double norm = 0.0;
    for (size_t k = 0; k < n; ++k) norm += q[i * n + k] * q[i * n + k];
    norm = std::sqrt(norm);
    for (size_t k = 0; k < n; ++k) q[i * n + k] /= norm;
  }
  return q;
}

TEST(Conv1x1Test, IdentityAndScalar) {
  const Tensor x = testing::RandomTensor(4, 3, 3, 10);
  EXPECT_EQ(Conv1x1Forward(x, Conv1x1Weights::Identity(4)), x);
  std::vector<double> two(16, 0.0);
  for (size_t i = 0; i < 4; ++i) two[i * 5] = 2.0;
  const Conv1x1Weights w(4, two);
  const Tensor y = Conv1x1Forward(x, w);
  for (size_t i = 0; i < x.size(); ++i) EXPECT_EQ(y.data()[i], 2.0 * x.data()[i]);
  EXPECT_LT(MaxAbsDiff(Conv1x1Inverse(y, w), x), 1e-15);
}

TEST(Conv1x1Test, OrthogonalPreservesNorm) {
  const size_t c = 12;
  const Conv1x1Weights w(c, RandomOrthogonal(c, 11));
  const Tensor x = testing::RandomTensor(c, 5, 5, 12, -1.0, 1.0);
  const Tensor y = Conv1x1Forward(x, w);
  for (size_t i = 0; i < 25; ++i) {
    double nx = 0.0, ny = 0.0;
    for (size_t k = 0; k < c; ++k) {
      nx += x.data()[k * 25 + i] * x.data()[k * 25 + i];
      ny += y.data()[k * 25 + i] * y.data()[k * 25 + i];
    }
    EXPECT_NEAR(std::sqrt(nx), std::sqrt(ny), 1e-5);
  }
}

TEST(Conv1x1Test, RoundTripRandomWellConditioned) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> m(64 * 64);
    for (size_t i = 0; i < 64; ++i) {
      for (size_t j = 0; j < 64; ++j) m[i * 64 + j] = (i == j) + u(rng) / 8.0;
    }
    const Conv1x1Weights w(64, m);
    EXPECT_LT(w.InverseResidual(), 1e-6);
    const Tensor x = testing::RandomTensor(64, 8, 8, 100 + trial, -1.0, 1.0);
    EXPECT_LT(MaxAbsDiff(Conv1x1Inverse(Conv1x1Forward(x, w), w), x), 1e-5);
  }
}

TEST(Conv1x1Test, SingularRejected) {
  std::vector<double> m = {1, 2, 2, 4};
  EXPECT_THROW(Conv1x1Weights(2, m), Error);
  EXPECT_THROW(Conv1x1Weights(2, std::vector<double>(3)), Error);
}

TEST(Conv1x1Test, ChannelMismatch) {
  EXPECT_THROW(Conv1x1Forward(Tensor(3, 2, 2), Conv1x1Weights::Identity(4)),
               Error);
}

// Orthonormal DCT-II basis from the cosine formula.
double Basis(size_t u, size_t x) {
  const double a = u == 0 ? 0.5 : std::sqrt(0.5);
  return a * std::cos((2.0 * x + 1.0) * u * std::numbers::pi / 8.0);
}

TEST(BdctTest, BasisMatchesCosineFormula) {
  const auto& b = Dct4Basis();
  for (size_t u = 0; u < 4; ++u) {
    for (size_t x = 0; x < 4; ++x) EXPECT_NEAR(b[u][x], Basis(u, x), 1e-15);
  }
}

TEST(BdctTest, ConstantBlock) {
  const Tensor t = BdctForward(Tensor(1, 4, 4, 0.3));
  ASSERT_EQ(t.height(), 2u);
  EXPECT_NEAR(t.at(0, 0, 0), 1.2, 1e-15);
  EXPECT_NEAR(t.at(0, 0, 1), 0.0, 1e-15);
  EXPECT_NEAR(t.at(0, 1, 0), 0.0, 1e-15);
  EXPECT_NEAR(t.at(0, 1, 1), 0.0, 1e-15);
  const Tensor back = BdctInverse(Tensor(1, 2, 2, {1.2, 0, 0, 0}));
  for (double v : back.data()) EXPECT_NEAR(v, 0.3, 1e-15);
}

TEST(BdctTest, ZeroInZeroOut) {
  const Tensor y = BdctForward(Tensor(2, 8, 8));
  for (double v : y.data()) EXPECT_EQ(v, 0.0);
}

TEST(BdctTest, PureHorizontalBasis) {
  Tensor x(1, 4, 4);
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) {
      x.at(0, i, j) = std::cos((2.0 * j + 1.0) * std::numbers::pi / 8.0);
    }
  }
  const Tensor t = BdctForward(x);
  EXPECT_NEAR(t.at(0, 0, 0), 0.0, 1e-12);
  EXPECT_GT(std::abs(t.at(0, 0, 1)), 1.0);
  EXPECT_NEAR(t.at(0, 1, 0), 0.0, 1e-12);
  EXPECT_NEAR(t.at(0, 1, 1), 0.0, 1e-12);
}

TEST(BdctTest, PositionPreservingLayout) {
  Tensor x(1, 8, 8);
  // Only block (1, 0) is non-zero.
  for (size_t i = 4; i < 8; ++i) {
    for (size_t j = 0; j < 4; ++j) x.at(0, i, j) = 1.0;
  }
  const Tensor t = BdctForward(x);
  EXPECT_NEAR(t.at(0, 2, 0), 4.0, 1e-12);
  EXPECT_EQ(t.at(0, 0, 0), 0.0);
  EXPECT_EQ(t.at(0, 0, 2), 0.0);
  EXPECT_EQ(t.at(0, 2, 2), 0.0);
}

TEST(BdctTest, BlockConstantRoundTrip) {
  Tensor x(2, 8, 12);
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u;
  for (size_t c = 0; c < 2; ++c) {
    for (size_t bi = 0; bi < 2; ++bi) {
      for (size_t bj = 0; bj < 3; ++bj) {
        const double v = u(rng);
        for (size_t i = 0; i < 4; ++i) {
          for (size_t j = 0; j < 4; ++j) x.at(c, 4 * bi + i, 4 * bj + j) = v;
        }
      }
    }
  }
  EXPECT_LT(MaxAbsDiff(BdctInverse(BdctForward(x)), x), 1e-5);
}

TEST(BdctTest, ProjectionOracle) {
  // P = B^T B over the four kept basis images.
  double p[16][16] = {};
  for (size_t u = 0; u < 2; ++u) {
    for (size_t v = 0; v < 2; ++v) {
      for (size_t a = 0; a < 16; ++a) {
        for (size_t b = 0; b < 16; ++b) {
          p[a][b] += Basis(u, a / 4) * Basis(v, a % 4) * Basis(u, b / 4) *
                     Basis(v, b % 4);
        }
      }
    }
  }
  const Tensor x = testing::RandomTensor(3, 8, 8, 15, -1.0, 1.0);
  const Tensor y = BdctInverse(BdctForward(x));
  double worst = 0.0;
  for (size_t c = 0; c < 3; ++c) {
    for (size_t bi = 0; bi < 2; ++bi) {
      for (size_t bj = 0; bj < 2; ++bj) {
        for (size_t a = 0; a < 16; ++a) {
          double ref = 0.0;
          for (size_t b = 0; b < 16; ++b) {
            ref += p[a][b] * x.at(c, 4 * bi + b / 4, 4 * bj + b % 4);
          }
          worst = std::max(
              worst, std::abs(ref - y.at(c, 4 * bi + a / 4, 4 * bj + a % 4)));
        }
      }
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(BdctTest, Linearity) {
  const Tensor x = testing::RandomTensor(2, 8, 8, 16);
  const Tensor y = testing::RandomTensor(2, 8, 8, 17);
  Tensor mix(2, 8, 8);
  for (size_t i = 0; i < mix.size(); ++i) {
    mix.data()[i] = 0.3 * x.data()[i] - 1.7 * y.data()[i];
  }
  const Tensor fx = BdctForward(x), fy = BdctForward(y), fm = BdctForward(mix);
  for (size_t i = 0; i < fm.size(); ++i) {
    EXPECT_NEAR(fm.data()[i], 0.3 * fx.data()[i] - 1.7 * fy.data()[i], 1e-5);
  }
}

TEST(BdctTest, QuarterOutputAndShapeErrors) {
  EXPECT_EQ(BdctForward(Tensor(5, 16, 24)).size(), 5u * 16 * 24 / 4);
  EXPECT_THROW(BdctForward(Tensor(1, 6, 8)), Error);
  EXPECT_THROW(BdctInverse(Tensor(1, 3, 2)), Error);
}

}  // namespace
}  // namespace itic
