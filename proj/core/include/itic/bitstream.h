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

#ifndef ITIC_BITSTREAM_H_
#define ITIC_BITSTREAM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "itic/entropy.h"
#include "itic/tensor.h"
#include "itic/weights.h"

namespace itic {

inline constexpr uint8_t kStreamVersion = 1;
inline constexpr size_t kHeaderSize = 37;
inline constexpr size_t kSideInfoEntrySize = 6;  // mu_q i32 + log_sigma_q i16
inline constexpr size_t kCrcSize = 4;

// Decoder limits. Streams claiming more are rejected before any allocation.
inline constexpr uint32_t kMaxImageDimension = 1u << 14;
inline constexpr uint64_t kMaxImagePixels = uint64_t{1} << 24;

enum StreamFlags : uint8_t {
  kFlagBdct = 1u << 0,
  kFlagPixelShuffle = 1u << 1,
};

// All multi-byte fields little-endian; see docs/bitstream.md.
struct StreamHeader {
  uint8_t version = kStreamVersion;
  uint8_t flags = 0;
  uint32_t true_width = 0;
  uint32_t true_height = 0;
  uint16_t n = 0;
  ProfileKind profile = ProfileKind::kIdentity;
  uint64_t seed = 0;
  uint64_t weights_hash = 0;
  uint32_t payload_len = 0;

  bool bdct() const { return flags & kFlagBdct; }
  bool pixel_shuffle() const { return flags & kFlagPixelShuffle; }
  ImageMeta meta() const { return {true_height, true_width, 8}; }

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

struct CodedStream {
  StreamHeader header;
  SideInfo side_info;
  std::vector<uint8_t> payload;

  friend bool operator==(const CodedStream&, const CodedStream&) = default;
};

bool IsSupportedSqueeze(uint32_t n);

size_t SideInfoSize(size_t n);

// header || side info || payload || CRC32 of everything before it. Throws
// kInvalidArgument when header.n / payload_len disagree with the parts.
std::vector<uint8_t> WriteStream(const StreamHeader& header,
                                 const SideInfo& side_info,
                                 std::span<const uint8_t> payload);
std::vector<uint8_t> WriteStream(const CodedStream& stream);

// Checks run in order: magic, version, length (truncation), CRC, header
// semantics, side-info ranges. Each failure has its own StreamErrorKind.
CodedStream ReadStream(std::span<const uint8_t> bytes);

// 8 * stream_len / (true_width * true_height): every byte counts.
double MeasuredBpp(size_t stream_len_bytes, const ImageMeta& meta);

}  // namespace itic

#endif  // ITIC_BITSTREAM_H_
