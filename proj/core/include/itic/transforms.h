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

#ifndef ITIC_TRANSFORMS_H_
#define ITIC_TRANSFORMS_H_

#include <cstddef>
#include <vector>

#include "itic/tensor.h"

namespace itic {

// ---------------------------------------------------------------------------
// Haar downscaling.
//
// For every 2x2 block (a b / c d) of every input channel:
//   LL = (a + b + c + d) / 4      HV = (a + b - c - d) / 4
//   HH = (a - b + c - d) / 4      HD = (a - b - c + d) / 4
// Output channels are band-major: [LL of all C | HV | HH | HD], so the first C
// channels are the 2x2 average-pooled image.

Tensor HaarForward(const Tensor& t);
Tensor HaarInverse(const Tensor& t);

// Space-to-depth with the same band-major layout as the Haar layer: output
// channel k * C + c holds sub-position k = 2 * dy + dx of input channel c.
Tensor PixelShuffleDown(const Tensor& t);
Tensor PixelShuffleUp(const Tensor& t);

// ---------------------------------------------------------------------------
// Invertible 1x1 convolution: a C x C channel mixing matrix applied at every
// spatial location. The inverse is computed once, at construction, by LU with
// partial pivoting.
class Conv1x1Weights {
 public:
  // Identity mixing for `channels` channels.
  static Conv1x1Weights Identity(size_t channels);

  // `matrix` is row-major, channels x channels. Throws kCodec when the matrix
  // is singular (|det| <= 1e-8) or the computed inverse is inaccurate.
  Conv1x1Weights(size_t channels, std::vector<double> matrix);

  size_t channels() const { return channels_; }
  bool is_identity() const { return is_identity_; }
  const std::vector<double>& matrix() const { return matrix_; }
  const std::vector<double>& inverse() const { return inverse_; }

  // max row sum of |matrix * inverse - I|.
  double InverseResidual() const;

 private:
  Conv1x1Weights() = default;

  size_t channels_ = 0;
  bool is_identity_ = true;
  std::vector<double> matrix_;
  std::vector<double> inverse_;
};

Tensor Conv1x1Forward(const Tensor& t, const Conv1x1Weights& w);
Tensor Conv1x1Inverse(const Tensor& t, const Conv1x1Weights& w);

// ---------------------------------------------------------------------------
// Block DCT sparsification.
//
// Each channel is tiled into 4x4 blocks; every block goes through an
// orthonormal 4x4 DCT-II and only the 2x2 low-frequency corner is kept. Block
// (i, j) lands at output block (i, j), so the output is C x H/2 x W/2. The
// inverse zero-fills the discarded coefficients, so BdctInverse(BdctForward(x))
// is the orthogonal projection of x onto the kept basis.

// Row u holds basis function u sampled at x = 0..3.
const double (&Dct4Basis())[4][4];

Tensor BdctForward(const Tensor& t);
Tensor BdctInverse(const Tensor& t);

}  // namespace itic

#endif  // ITIC_TRANSFORMS_H_
