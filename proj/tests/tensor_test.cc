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

#include "itic/tensor.h"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "itic/error.h"
#include "test_util.h"

namespace itic {
namespace {

TEST(TensorTest, ShapeAndLayout) {
  Tensor t(2, 3, 4);
  EXPECT_EQ(t.size(), 24u);
  t.at(1, 2, 3) = 5.0;
  EXPECT_EQ(t.data()[(1 * 3 + 2) * 4 + 3], 5.0);
  EXPECT_EQ(t.plane(1)[2 * 4 + 3], 5.0);
}

TEST(TensorTest, DataLengthMustMatch) {
  EXPECT_THROW(Tensor(1, 2, 2, std::vector<double>(3)), Error);
}

TEST(TensorTest, AllFinite) {
  Tensor t(1, 2, 2);
  EXPECT_TRUE(t.AllFinite());
  t.at(0, 1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(t.AllFinite());
}

TEST(PadTest, AlignedIsUnchanged) {
  const Tensor t = testing::RandomTensor(3, 32, 32, 1);
  EXPECT_EQ(PadToMultiple(t, 32), t);
}

TEST(PadTest, CeilingShape) {
  const Tensor p = PadToMultiple(testing::RandomTensor(3, 33, 33, 2), 32);
  EXPECT_EQ(p.height(), 64u);
  EXPECT_EQ(p.width(), 64u);
}

TEST(PadTest, ReflectsWithoutEdgeRepeat) {
  const Tensor t(1, 1, 3, {1.0, 2.0, 3.0});
  const Tensor p = PadToMultiple(t, 4);
  ASSERT_EQ(p.width(), 4u);
  EXPECT_EQ(p.at(0, 0, 3), 2.0);
  EXPECT_EQ(p.at(0, 0, 0), 1.0);
}

// Reflect-index oracle: index i >= n maps to the mirror image around n - 1,
// folding again (period 2n - 2) when the pad is longer than the row.
size_t ReflectIndex(size_t i, size_t n) {
  if (n == 1) return 0;
  const size_t period = 2 * n - 2;
  const size_t r = i % period;
  return r < n ? r : period - r;
}

TEST(PadTest, MatchesReflectIndexOracle) {
  for (size_t h : {1u, 2u, 3u, 5u, 17u, 33u}) {
    for (size_t w : {1u, 2u, 7u, 31u}) {
      const Tensor t = testing::RandomTensor(2, h, w, h * 100 + w);
      const Tensor p = PadToMultiple(t, 32);
      ASSERT_EQ(p.height() % 32, 0u);
      ASSERT_EQ(p.width() % 32, 0u);
      ASSERT_LT(p.height(), h + 32);
      for (size_t c = 0; c < 2; ++c) {
        for (size_t y = 0; y < p.height(); ++y) {
          for (size_t x = 0; x < p.width(); ++x) {
            ASSERT_EQ(p.at(c, y, x),
                      t.at(c, ReflectIndex(y, h), ReflectIndex(x, w)))
                << h << "x" << w << " at " << y << "," << x;
          }
        }
      }
    }
  }
}

TEST(CropTest, PadThenCropIsIdentity) {
  const Tensor t = testing::RandomTensor(3, 33, 33, 3);
  const ImageMeta meta{33, 33, 8};
  EXPECT_EQ(Crop(PadToMultiple(t, 32), meta), t);
}

TEST(CropTest, ExactTensorUnchanged) {
  const Tensor t = testing::RandomTensor(3, 8, 8, 4);
  EXPECT_EQ(Crop(t, ImageMeta{8, 8, 8}), t);
}

TEST(CropTest, OversizedMetaThrows) {
  const Tensor t(3, 8, 8);
  try {
    Crop(t, ImageMeta{9, 8, 8});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(TensorTest, MaxAbsDiff) {
  Tensor a(1, 1, 2, {0.0, 1.0});
  Tensor b(1, 1, 2, {0.5, 0.75});
  EXPECT_DOUBLE_EQ(MaxAbsDiff(a, b), 0.5);
}

}  // namespace
}  // namespace itic
