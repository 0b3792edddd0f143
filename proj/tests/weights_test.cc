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

#include <fstream>

#include <gtest/gtest.h>

#include "itic/error.h"
#include "test_util.h"

namespace itic {
namespace {

TEST(WeightProfileTest, IdentityShape) {
  const WeightProfile p = WeightProfile::Identity();
  EXPECT_EQ(p.kind(), ProfileKind::kIdentity);
  for (size_t b = 0; b < kNumBlocks; ++b) {
    EXPECT_EQ(p.block(b).mix.channels(), BlockChannels(b));
    EXPECT_TRUE(p.block(b).mix.is_identity());
    for (const CouplingParams& c : p.block(b).couplings) {
      EXPECT_EQ(c.channels, BlockChannels(b));
      EXPECT_EQ(c.split, BlockChannels(b) / 2);
      EXPECT_TRUE(c.s1.IsZero() && c.t1.IsZero() && c.s2.IsZero() &&
                  c.t2.IsZero());
    }
  }
  EXPECT_EQ(BlockChannels(3), kLatentChannels);
}

TEST(WeightProfileTest, SeededIsDeterministic) {
  const WeightProfile a = WeightProfile::Seeded(42);
  const WeightProfile b = WeightProfile::Seeded(42);
  const WeightProfile c = WeightProfile::Seeded(43);
  EXPECT_EQ(a.Serialize(), b.Serialize());
  EXPECT_NE(a.Serialize(), c.Serialize());
  EXPECT_EQ(a.seed(), 42u);
  EXPECT_LT(a.block(3).mix.InverseResidual(), 1e-6);
}

TEST(WeightProfileTest, SerializeRoundTrip) {
  const WeightProfile a = WeightProfile::Seeded(5);
  const std::vector<uint8_t> bytes = a.Serialize();
  EXPECT_EQ(bytes.size(), 4 + 1 + 1 + a.ParameterCount() * 4 + 4);
  const WeightProfile b = WeightProfile::FromBytes(bytes);
  EXPECT_EQ(b.kind(), ProfileKind::kFile);
  EXPECT_EQ(b.weights_hash(), WeightsHash(bytes));
  EXPECT_EQ(b.Serialize(), bytes);
}

TEST(WeightProfileTest, IdentityFileBehavesLikeIdentity) {
  const std::vector<uint8_t> bytes = WeightProfile::Identity().Serialize();
  const WeightProfile f = WeightProfile::FromBytes(bytes);
  for (size_t b = 0; b < kNumBlocks; ++b) {
    EXPECT_TRUE(f.block(b).couplings[0].s1.IsZero());
  }
}

TEST(WeightProfileTest, CorruptFilesRejected) {
  std::vector<uint8_t> bytes = WeightProfile::Identity().Serialize();
  auto expect_codec = [](const std::vector<uint8_t>& b) {
    try {
      WeightProfile::FromBytes(b);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kCodec);
    }
  };
  std::vector<uint8_t> bad = bytes;
  bad[0] = 'X';
  expect_codec(bad);
  bad = bytes;
  bad[100] ^= 1;
  expect_codec(bad);
  expect_codec(std::vector<uint8_t>(bytes.begin(), bytes.end() - 9));
  expect_codec({});
}

TEST(WeightProfileTest, MissingFileIsIo) {
  try {
    WeightProfile::FromFile("/nonexistent/w.bin");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(WeightsHashTest, Fnv1aVectors) {
  EXPECT_EQ(WeightsHash({}), 0xcbf29ce484222325ULL);
  const uint8_t a[] = {'a'};
  EXPECT_EQ(WeightsHash(a), 0xaf63dc4c8601ec8cULL);
}

TEST(XoshiroTest, ReferenceSequence) {
  // splitmix64(0) state expansion followed by xoshiro256**.
  Xoshiro256 rng(0);
  EXPECT_EQ(rng.Next(), 0x99ec5f36cb75f2b4ULL);
  EXPECT_EQ(rng.Next(), 0xbf6e1f784956452aULL);
  EXPECT_EQ(rng.Next(), 0x1a5f849d4933e6e0ULL);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.UniformSigned();
    EXPECT_GE(u, -1.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace itic
