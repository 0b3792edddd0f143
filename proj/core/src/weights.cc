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

#include "itic/weights.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <utility>

#include "byte_io.h"
#include "itic/error.h"

namespace itic {

namespace {

constexpr uint8_t kWeightsMagic[4] = {'I', 'T', 'W', 'T'};
constexpr uint8_t kWeightsVersion = 1;
constexpr float kSeededScale = 0.01f;

bool AllZero(const std::vector<float>& v) {
  return std::all_of(v.begin(), v.end(), [](float x) { return x == 0.0f; });
}

bool AllFinite(const std::vector<float>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](float x) { return std::isfinite(x); });
}

Conv3x3 ZeroConv(size_t in, size_t out) {
  Conv3x3 c;
  c.in = in;
  c.out = out;
  return c;
}

void ValidateConv(const Conv3x3& c, const char* what) {
  if (c.in == 0 || c.out == 0) {
    ThrowCodec(std::string(what) + ": empty conv");
  }
  if (!c.weight.empty() && c.weight.size() != c.weight_count()) {
    ThrowCodec(std::string(what) + ": conv weight count mismatch");
  }
  if (!c.bias.empty() && c.bias.size() != c.out) {
    ThrowCodec(std::string(what) + ": conv bias count mismatch");
  }
  if (!AllFinite(c.weight) || !AllFinite(c.bias)) {
    ThrowCodec(std::string(what) + ": non-finite weight");
  }
}

void ValidateBottleneck(const Bottleneck& b, size_t in, size_t out,
                        const char* what) {
  ValidateConv(b.reduce, what);
  ValidateConv(b.expand, what);
  if (b.reduce.in != in || b.expand.out != out ||
      b.reduce.out != b.expand.in) {
    ThrowCodec(std::string(what) + ": bottleneck shape mismatch");
  }
}

// Order of the four coupling functions everywhere parameters are streamed.
template <typename Coupling, typename Fn>
void ForEachFunction(Coupling& c, Fn&& fn) {
  fn(c.s1);
  fn(c.t1);
  fn(c.s2);
  fn(c.t2);
}

template <typename B, typename Fn>
void ForEachConv(B& b, Fn&& fn) {
  fn(b.reduce);
  fn(b.expand);
}

}  // namespace

bool Conv3x3::IsZero() const { return AllZero(weight) && AllZero(bias); }

Bottleneck Bottleneck::Zero(size_t in, size_t out) {
  Bottleneck b;
  b.reduce = ZeroConv(in, in / 2);
  b.expand = ZeroConv(in / 2, out);
  return b;
}

CouplingParams CouplingParams::Zero(size_t channels) {
  CouplingParams p;
  p.channels = channels;
  p.split = channels / 2;
  const size_t lo = p.split;
  const size_t hi = channels - p.split;
  p.s1 = Bottleneck::Zero(lo, hi);
  p.t1 = Bottleneck::Zero(lo, hi);
  p.s2 = Bottleneck::Zero(hi, lo);
  p.t2 = Bottleneck::Zero(hi, lo);
  return p;
}

void CouplingParams::Validate() const {
  if (split == 0 || split >= channels) {
    ThrowCodec("CouplingParams: split index must satisfy 0 < c < C");
  }
  if (!(s_clamp > 0.0) || !std::isfinite(s_clamp)) {
    ThrowCodec("CouplingParams: s_clamp must be positive");
  }
  const size_t lo = split;
  const size_t hi = channels - split;
  ValidateBottleneck(s1, lo, hi, "s1");
  ValidateBottleneck(t1, lo, hi, "t1");
  ValidateBottleneck(s2, hi, lo, "s2");
  ValidateBottleneck(t2, hi, lo, "t2");
}

// ---------------------------------------------------------------------------

Xoshiro256::Xoshiro256(uint64_t seed) {
  uint64_t z = seed;
  for (uint64_t& s : s_) {
    z += 0x9e3779b97f4a7c15ULL;
    uint64_t x = z;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    s = x ^ (x >> 31);
  }
}

uint64_t Xoshiro256::Next() {
  const uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

double Xoshiro256::UniformSigned() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-52 - 1.0;
}

// ---------------------------------------------------------------------------

WeightProfile::WeightProfile(ProfileKind kind, uint64_t seed,
                             uint64_t weights_hash,
                             std::vector<BlockWeights> blocks)
    : kind_(kind),
      seed_(seed),
      weights_hash_(weights_hash),
      blocks_(std::move(blocks)) {
  if (blocks_.size() != kNumBlocks) {
    ThrowCodec("WeightProfile: expected " + std::to_string(kNumBlocks) +
               " blocks, got " + std::to_string(blocks_.size()));
  }
  for (size_t b = 0; b < kNumBlocks; ++b) {
    const size_t channels = BlockChannels(b);
    if (blocks_[b].mix.channels() != channels) {
      ThrowCodec("WeightProfile: block " + std::to_string(b) +
                 " mixing matrix has wrong size");
    }
    for (const CouplingParams& c : blocks_[b].couplings) {
      if (c.channels != channels) {
        ThrowCodec("WeightProfile: block " + std::to_string(b) +
                   " coupling has wrong channel count");
      }
      c.Validate();
    }
  }
}

WeightProfile WeightProfile::Identity() {
  std::vector<BlockWeights> blocks;
  for (size_t b = 0; b < kNumBlocks; ++b) {
    const size_t channels = BlockChannels(b);
    blocks.push_back({Conv1x1Weights::Identity(channels),
                      {CouplingParams::Zero(channels),
                       CouplingParams::Zero(channels),
                       CouplingParams::Zero(channels)}});
  }
  return WeightProfile(ProfileKind::kIdentity, 0, 0, std::move(blocks));
}

WeightProfile WeightProfile::Seeded(uint64_t seed) {
  Xoshiro256 rng(seed);
  auto fill = [&rng](std::vector<float>& v, size_t n) {
    v.resize(n);
    for (float& x : v) {
      x = static_cast<float>(rng.UniformSigned()) * kSeededScale;
    }
  };
  std::vector<BlockWeights> blocks;
  for (size_t b = 0; b < kNumBlocks; ++b) {
    const size_t channels = BlockChannels(b);
    std::vector<double> matrix(channels * channels);
    for (size_t r = 0; r < channels; ++r) {
      for (size_t c = 0; c < channels; ++c) {
        // Kept on the float grid so Serialize() is lossless.
        const float noise =
            static_cast<float>(rng.UniformSigned()) * kSeededScale;
        matrix[r * channels + c] = (r == c ? 1.0f : 0.0f) + noise;
      }
    }
    BlockWeights bw{Conv1x1Weights(channels, std::move(matrix)),
                    {CouplingParams::Zero(channels),
                     CouplingParams::Zero(channels),
                     CouplingParams::Zero(channels)}};
    for (CouplingParams& cp : bw.couplings) {
      ForEachFunction(cp, [&](auto& f) {
        ForEachConv(f, [&](auto& conv) {
          fill(conv.weight, conv.weight_count());
          fill(conv.bias, conv.out);
        });
      });
    }
    blocks.push_back(std::move(bw));
  }
  return WeightProfile(ProfileKind::kSeeded, seed, 0, std::move(blocks));
}

std::vector<uint8_t> WeightProfile::Serialize() const {
  std::vector<uint8_t> out;
  out.reserve(ParameterCount() * 4 + 16);
  internal::ByteWriter w(&out);
  w.Bytes(kWeightsMagic);
  w.U8(kWeightsVersion);
  w.U8(static_cast<uint8_t>(kNumBlocks));
  auto put = [&w](const std::vector<float>& v, size_t n) {
    if (v.empty()) {
      for (size_t i = 0; i < n; ++i) w.F32(0.0f);
    } else {
      for (float x : v) w.F32(x);
    }
  };
  for (const BlockWeights& bw : blocks_) {
    for (double m : bw.mix.matrix()) w.F32(static_cast<float>(m));
    for (const CouplingParams& cp : bw.couplings) {
      ForEachFunction(cp, [&](auto& f) {
        ForEachConv(f, [&](auto& conv) {
          put(conv.weight, conv.weight_count());
          put(conv.bias, conv.out);
        });
      });
    }
  }
  w.U32(internal::Crc32(out));
  return out;
}

WeightProfile WeightProfile::FromBytes(std::span<const uint8_t> bytes) {
  if (bytes.size() < 10) ThrowCodec("weights file truncated");
  if (!std::equal(kWeightsMagic, kWeightsMagic + 4, bytes.begin())) {
    ThrowCodec("weights file has bad magic");
  }
  uint32_t stored_crc = 0;
  for (int i = 0; i < 4; ++i) {
    stored_crc |= uint32_t{bytes[bytes.size() - 4 + i]} << (8 * i);
  }
  if (internal::Crc32(bytes.first(bytes.size() - 4)) != stored_crc) {
    ThrowCodec("weights file CRC mismatch");
  }
  internal::ByteReader r(bytes.first(bytes.size() - 4));
  std::span<const uint8_t> magic;
  uint8_t version = 0, block_count = 0;
  r.Bytes(4, &magic);
  r.U8(&version);
  r.U8(&block_count);
  if (version != kWeightsVersion) {
    ThrowCodec("unsupported weights version " + std::to_string(version));
  }
  if (block_count != kNumBlocks) {
    ThrowCodec("weights file must contain exactly 4 blocks");
  }
  auto take = [&r](std::vector<float>& v, size_t n) {
    v.resize(n);
    for (float& x : v) {
      if (!r.F32(&x)) ThrowCodec("weights file truncated");
    }
  };
  std::vector<BlockWeights> blocks;
  for (size_t b = 0; b < kNumBlocks; ++b) {
    const size_t channels = BlockChannels(b);
    std::vector<float> m32;
    take(m32, channels * channels);
    std::vector<double> matrix(m32.begin(), m32.end());
    BlockWeights bw{Conv1x1Weights(channels, std::move(matrix)),
                    {CouplingParams::Zero(channels),
                     CouplingParams::Zero(channels),
                     CouplingParams::Zero(channels)}};
    for (CouplingParams& cp : bw.couplings) {
      ForEachFunction(cp, [&](auto& f) {
        ForEachConv(f, [&](auto& conv) {
          take(conv.weight, conv.weight_count());
          take(conv.bias, conv.out);
          if (conv.IsZero()) {
            conv.weight.clear();
            conv.bias.clear();
          }
        });
      });
    }
    blocks.push_back(std::move(bw));
  }
  if (r.remaining() != 0) ThrowCodec("weights file has trailing bytes");
  return WeightProfile(ProfileKind::kFile, 0, WeightsHash(bytes),
                       std::move(blocks));
}

WeightProfile WeightProfile::FromFile(const std::filesystem::path& path) {
  return FromBytes(ReadBinaryFile(path));
}

size_t WeightProfile::ParameterCount() const {
  size_t n = 0;
  for (const BlockWeights& bw : blocks_) {
    n += bw.mix.channels() * bw.mix.channels();
    for (const CouplingParams& cp : bw.couplings) {
      ForEachFunction(cp, [&](auto& f) {
        ForEachConv(f, [&](auto& conv) {
          n += conv.weight_count() + conv.out;
        });
      });
    }
  }
  return n;
}

uint64_t WeightsHash(std::span<const uint8_t> bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<uint8_t> ReadBinaryFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowIo("cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) ThrowIo("read failed: " + path.string());
  return bytes;
}

}  // namespace itic
