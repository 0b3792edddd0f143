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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "itic/error.h"

namespace itic {

Tensor::Tensor(size_t channels, size_t height, size_t width, double fill)
    : channels_(channels),
      height_(height),
      width_(width),
      data_(channels * height * width, fill) {}

Tensor::Tensor(size_t channels, size_t height, size_t width,
               std::vector<double> data)
    : channels_(channels),
      height_(height),
      width_(width),
      data_(std::move(data)) {
  if (data_.size() != channels * height * width) {
    ThrowInvalid("tensor data length " + std::to_string(data_.size()) +
                 " != " + std::to_string(channels) + "x" +
                 std::to_string(height) + "x" + std::to_string(width));
  }
}

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

double MaxAbsDiff(const Tensor& a, const Tensor& b) {
  if (!a.SameShape(b)) ThrowInvalid("MaxAbsDiff: shape mismatch");
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (size_t i = 0; i < da.size(); ++i) {
    m = std::max(m, std::abs(da[i] - db[i]));
  }
  return m;
}

namespace {

// Whole-sample symmetric reflection about the last index, periodic so that
// arbitrarily long extensions stay in range.
size_t ReflectIndex(size_t i, size_t n) {
  if (n == 1) return 0;
  const size_t period = 2 * (n - 1);
  i %= period;
  return i < n ? i : period - i;
}

size_t RoundUp(size_t v, size_t m) { return (v + m - 1) / m * m; }

}  // namespace

Tensor PadToMultiple(const Tensor& t, size_t multiple) {
  if (multiple == 0) ThrowInvalid("PadToMultiple: multiple must be >= 1");
  const size_t h = RoundUp(t.height(), multiple);
  const size_t w = RoundUp(t.width(), multiple);
  if (h == t.height() && w == t.width()) return t;
  if (t.height() == 0 || t.width() == 0) {
    ThrowInvalid("PadToMultiple: cannot pad an empty plane");
  }
  Tensor out(t.channels(), h, w);
  for (size_t c = 0; c < t.channels(); ++c) {
    for (size_t y = 0; y < h; ++y) {
      const size_t sy = ReflectIndex(y, t.height());
      for (size_t x = 0; x < w; ++x) {
        out.at(c, y, x) = t.at(c, sy, ReflectIndex(x, t.width()));
      }
    }
  }
  return out;
}

Tensor Crop(const Tensor& t, const ImageMeta& meta) {
  if (meta.true_height > t.height() || meta.true_width > t.width()) {
    ThrowInvalid("Crop: " + std::to_string(meta.true_height) + "x" +
                 std::to_string(meta.true_width) + " exceeds tensor " +
                 std::to_string(t.height()) + "x" +
                 std::to_string(t.width()));
  }
  if (meta.true_height == t.height() && meta.true_width == t.width()) return t;
  Tensor out(t.channels(), meta.true_height, meta.true_width);
  for (size_t c = 0; c < t.channels(); ++c) {
    for (size_t y = 0; y < meta.true_height; ++y) {
      const double* src = t.plane(c).data() + y * t.width();
      std::copy(src, src + meta.true_width, &out.at(c, y, 0));
    }
  }
  return out;
}

}  // namespace itic
