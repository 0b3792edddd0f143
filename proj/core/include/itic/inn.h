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

#ifndef ITIC_INN_H_
#define ITIC_INN_H_

#include <cstddef>
#include <vector>

#include "itic/tensor.h"
#include "itic/weights.h"

namespace itic {

enum class DownscaleMode { kHaar, kPixelShuffle };

// Evaluates one s/t function on `channels` consecutive planes starting at
// `first` of `x`. Returns out x H x W values, planar.
std::vector<double> EvaluateBottleneck(const Bottleneck& f, const Tensor& x,
                                       size_t first);

// Affine coupling and its exact inverse.
Tensor CouplingForward(const Tensor& u, const CouplingParams& p);
Tensor CouplingInverse(const Tensor& v, const CouplingParams& p);

// Downscale (Haar or pixel shuffle) -> 1x1 mixing -> three couplings.
Tensor BlockForward(const Tensor& t, const BlockWeights& block,
                    DownscaleMode mode);
Tensor BlockInverse(const Tensor& t, const BlockWeights& block,
                    DownscaleMode mode);

// 3 x H x W -> 768 x H/16 x W/16 and back. H and W must be multiples of 16.
Tensor NetworkForward(const Tensor& image, const WeightProfile& profile,
                      DownscaleMode mode);
Tensor NetworkInverse(const Tensor& latent, const WeightProfile& profile,
                      DownscaleMode mode);

// Channel squeeze: the 768 latent channels form `n` contiguous groups of
// 768 / n; each group is replaced by its mean. The inverse replicates every
// squeezed channel back over its group.
Tensor SqueezeForward(const Tensor& t, size_t n);
Tensor SqueezeInverse(const Tensor& t, size_t full_channels = kLatentChannels);

}  // namespace itic

#endif  // ITIC_INN_H_
