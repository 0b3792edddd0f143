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

#ifndef ITIC_WEIGHTS_H_
#define ITIC_WEIGHTS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "itic/transforms.h"

namespace itic {

// Number of invertible blocks and the channel count of the final latent.
inline constexpr size_t kNumBlocks = 4;
inline constexpr size_t kLatentChannels = 768;
inline constexpr double kDefaultSClamp = 2.0;
inline constexpr float kLeakySlope = 0.01f;

// Channel count after the downscaling layer of block b: 3 * 4^(b+1).
constexpr size_t BlockChannels(size_t b) { return size_t{12} << (2 * b); }

// 3x3 convolution, stride 1, zero padding 1. Weights are laid out
// [out][in][ky][kx]. Empty weight and bias vectors mean all-zero parameters.
struct Conv3x3 {
  size_t in = 0;
  size_t out = 0;
  std::vector<float> weight;
  std::vector<float> bias;

  size_t weight_count() const { return out * in * 9; }
  bool IsZero() const;
};

// conv3x3(in -> in/2) -> leaky ReLU -> conv3x3(in/2 -> out).
struct Bottleneck {
  Conv3x3 reduce;
  Conv3x3 expand;

  static Bottleneck Zero(size_t in, size_t out);
  bool IsZero() const { return reduce.IsZero() && expand.IsZero(); }
};

// Affine coupling over `channels` channels split at `split`:
//   v1 = u1 * exp(s2(u2)) + t2(u2)
//   v2 = u2 * exp(s1(v1)) + t1(v1)
// s outputs pass through s_clamp * tanh(s / s_clamp) before exp.
struct CouplingParams {
  size_t channels = 0;
  size_t split = 0;
  double s_clamp = kDefaultSClamp;
  Bottleneck s1, t1, s2, t2;

  // s = t = 0: the coupling is the identity map.
  static CouplingParams Zero(size_t channels);

  // Throws kCodec when shapes are inconsistent, the split is not interior,
  // s_clamp <= 0, or any weight is non-finite.
  void Validate() const;
};

struct BlockWeights {
  Conv1x1Weights mix;
  std::array<CouplingParams, 3> couplings;
};

enum class ProfileKind : uint8_t { kIdentity = 0, kSeeded = 1, kFile = 2 };

// All parameters of the 4-block network plus where they came from. Immutable
// once built; share it across threads freely.
class WeightProfile {
 public:
  // s = t = 0 everywhere and identity 1x1 mixing: the network reduces to a
  // 4-level Haar pyramid.
  static WeightProfile Identity();

  // Weights drawn from xoshiro256** (seeded through splitmix64): coupling
  // parameters are 0.01 * U[-1, 1), mixing matrices are I + 0.01 * U[-1, 1).
  static WeightProfile Seeded(uint64_t seed);

  // Parses the "ITWT" weights format. Throws kCodec on malformed input.
  static WeightProfile FromBytes(std::span<const uint8_t> bytes);
  static WeightProfile FromFile(const std::filesystem::path& path);

  // Serializes to the "ITWT" format (always the full, dense parameter set).
  std::vector<uint8_t> Serialize() const;

  ProfileKind kind() const { return kind_; }
  uint64_t seed() const { return seed_; }
  uint64_t weights_hash() const { return weights_hash_; }
  const BlockWeights& block(size_t b) const { return blocks_[b]; }

  // Total number of scalar parameters (dense count, zeros included).
  size_t ParameterCount() const;

  // Test/tooling constructor; validates every block.
  WeightProfile(ProfileKind kind, uint64_t seed, uint64_t weights_hash,
                std::vector<BlockWeights> blocks);

 private:
  WeightProfile() = default;

  ProfileKind kind_ = ProfileKind::kIdentity;
  uint64_t seed_ = 0;
  uint64_t weights_hash_ = 0;
  std::vector<BlockWeights> blocks_;
};

// FNV-1a, 64-bit, over the raw weights-file bytes.
uint64_t WeightsHash(std::span<const uint8_t> bytes);

// Reads a whole file; throws kIo on failure.
std::vector<uint8_t> ReadBinaryFile(const std::filesystem::path& path);

// xoshiro256** generator. The seed is expanded with splitmix64.
class Xoshiro256 {
 public:
  explicit Xoshiro256(uint64_t seed);
  uint64_t Next();
  // Uniform double in [-1, 1) with 53 random bits.
  double UniformSigned();

 private:
  uint64_t s_[4];
};

}  // namespace itic

#endif  // ITIC_WEIGHTS_H_
