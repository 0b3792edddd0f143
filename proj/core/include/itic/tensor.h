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

#ifndef ITIC_TENSOR_H_
#define ITIC_TENSOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace itic {

// Planar channel-major C x H x W array. Element (c, y, x) lives at
// data[(c * H + y) * W + x]. Values are doubles so that averaging Haar
// steps on 8-bit pixel data stay exact.
class Tensor {
 public:
  Tensor() = default;
  Tensor(size_t channels, size_t height, size_t width, double fill = 0.0);
  Tensor(size_t channels, size_t height, size_t width,
         std::vector<double> data);

  size_t channels() const { return channels_; }
  size_t height() const { return height_; }
  size_t width() const { return width_; }
  size_t plane_size() const { return height_ * width_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& at(size_t c, size_t y, size_t x) {
    return data_[(c * height_ + y) * width_ + x];
  }
  double at(size_t c, size_t y, size_t x) const {
    return data_[(c * height_ + y) * width_ + x];
  }

  std::span<double> plane(size_t c) {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<const double> plane(size_t c) const {
    return {data_.data() + c * plane_size(), plane_size()};
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool SameShape(const Tensor& other) const {
    return channels_ == other.channels_ && height_ == other.height_ &&
           width_ == other.width_;
  }

  bool AllFinite() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  size_t channels_ = 0;
  size_t height_ = 0;
  size_t width_ = 0;
  std::vector<double> data_;
};

// Largest absolute elementwise difference. Shapes must match.
double MaxAbsDiff(const Tensor& a, const Tensor& b);

struct ImageMeta {
  uint32_t true_height = 0;
  uint32_t true_width = 0;
  uint8_t bit_depth = 8;

  friend bool operator==(const ImageMeta&, const ImageMeta&) = default;
};

// Pads right/bottom by mirror reflection (edge sample not repeated) until
// height and width are multiples of `multiple`.
Tensor PadToMultiple(const Tensor& t, size_t multiple);

// Top-left meta.true_height x meta.true_width region.
Tensor Crop(const Tensor& t, const ImageMeta& meta);

}  // namespace itic

#endif  // ITIC_TENSOR_H_
