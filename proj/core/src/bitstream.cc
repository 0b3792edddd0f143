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

#include "itic/bitstream.h"

#include <algorithm>
#include <string>

#include "byte_io.h"
#include "itic/error.h"

namespace itic {

namespace {

constexpr uint8_t kMagic[4] = {'I', 'T', 'I', 'C'};

}  // namespace

bool IsSupportedSqueeze(uint32_t n) {
  return n == 16 || n == 32 || n == 128 || n == 768;
}

size_t SideInfoSize(size_t n) { return n * kSideInfoEntrySize; }

std::vector<uint8_t> WriteStream(const StreamHeader& header,
                                 const SideInfo& side_info,
                                 std::span<const uint8_t> payload) {
  if (side_info.size() != header.n) {
    ThrowInvalid("WriteStream: side info has " +
                 std::to_string(side_info.size()) + " entries, header says " +
                 std::to_string(header.n));
  }
  if (payload.size() != header.payload_len) {
    ThrowInvalid("WriteStream: payload_len does not match payload");
  }
  std::vector<uint8_t> out;
  out.reserve(kHeaderSize + SideInfoSize(header.n) + payload.size() + kCrcSize);
  internal::ByteWriter w(&out);
  w.Bytes(kMagic);
  w.U8(header.version);
  w.U8(header.flags);
  w.U32(header.true_width);
  w.U32(header.true_height);
  w.U16(header.n);
  w.U8(static_cast<uint8_t>(header.profile));
  w.U64(header.seed);
  w.U64(header.weights_hash);
  w.U32(header.payload_len);
  for (const ChannelStats& s : side_info) {
    w.I32(s.mu_q);
    w.I16(s.log_sigma_q);
  }
  w.Bytes(payload);
  w.U32(internal::Crc32(out));
  return out;
}

std::vector<uint8_t> WriteStream(const CodedStream& stream) {
  return WriteStream(stream.header, stream.side_info, stream.payload);
}

CodedStream ReadStream(std::span<const uint8_t> bytes) {
  const size_t magic_len = std::min<size_t>(bytes.size(), 4);
  if (!std::equal(bytes.begin(), bytes.begin() + magic_len, kMagic)) {
    ThrowStream(StreamErrorKind::kBadMagic, "not an ITIC stream");
  }
  if (bytes.size() < 5) {
    ThrowStream(StreamErrorKind::kTruncated, "stream ends inside the header");
  }
  if (bytes[4] != kStreamVersion) {
    ThrowStream(StreamErrorKind::kUnsupportedVersion,
                "version " + std::to_string(bytes[4]));
  }
  if (bytes.size() < kHeaderSize) {
    ThrowStream(StreamErrorKind::kTruncated, "stream ends inside the header");
  }

  CodedStream s;
  StreamHeader& h = s.header;
  internal::ByteReader r(bytes);
  std::span<const uint8_t> magic;
  uint8_t profile = 0;
  r.Bytes(4, &magic);
  r.U8(&h.version);
  r.U8(&h.flags);
  r.U32(&h.true_width);
  r.U32(&h.true_height);
  r.U16(&h.n);
  r.U8(&profile);
  r.U64(&h.seed);
  r.U64(&h.weights_hash);
  r.U32(&h.payload_len);

  const uint64_t total = uint64_t{kHeaderSize} + SideInfoSize(h.n) +
                         uint64_t{h.payload_len} + kCrcSize;
  if (bytes.size() < total) {
    ThrowStream(StreamErrorKind::kTruncated,
                "stream has " + std::to_string(bytes.size()) +
                    " bytes, header declares " + std::to_string(total));
  }
  const size_t body = static_cast<size_t>(total) - kCrcSize;
  uint32_t stored_crc = 0;
  for (size_t i = 0; i < kCrcSize; ++i) {
    stored_crc |= uint32_t{bytes[body + i]} << (8 * i);
  }
  if (internal::Crc32(bytes.first(body)) != stored_crc) {
    ThrowStream(StreamErrorKind::kCrcMismatch, "stream CRC32 mismatch");
  }
  if (bytes.size() != total) {
    ThrowStream(StreamErrorKind::kInvalidHeader, "trailing bytes after CRC");
  }

  if (h.flags & ~(kFlagBdct | kFlagPixelShuffle)) {
    ThrowStream(StreamErrorKind::kInvalidHeader, "unknown flag bits");
  }
  if (!IsSupportedSqueeze(h.n)) {
    ThrowStream(StreamErrorKind::kInvalidHeader,
                "unsupported N " + std::to_string(h.n));
  }
  if (profile > static_cast<uint8_t>(ProfileKind::kFile)) {
    ThrowStream(StreamErrorKind::kInvalidHeader, "unknown profile id");
  }
  h.profile = static_cast<ProfileKind>(profile);
  if ((h.profile != ProfileKind::kSeeded && h.seed != 0) ||
      (h.profile != ProfileKind::kFile && h.weights_hash != 0)) {
    ThrowStream(StreamErrorKind::kInvalidHeader,
                "provenance fields inconsistent with profile");
  }
  if (h.true_width == 0 || h.true_height == 0 ||
      h.true_width > kMaxImageDimension || h.true_height > kMaxImageDimension ||
      uint64_t{h.true_width} * h.true_height > kMaxImagePixels) {
    ThrowStream(StreamErrorKind::kInvalidHeader, "image dimensions out of range");
  }

  s.side_info.resize(h.n);
  for (ChannelStats& c : s.side_info) {
    r.I32(&c.mu_q);
    r.I16(&c.log_sigma_q);
    if (c.log_sigma_q < kLogSigmaQMin || c.log_sigma_q > kLogSigmaQMax ||
        c.mu_q < -kMeanQLimit || c.mu_q > kMeanQLimit) {
      ThrowStream(StreamErrorKind::kInvalidHeader, "side info out of range");
    }
  }
  std::span<const uint8_t> payload;
  r.Bytes(h.payload_len, &payload);
  s.payload.assign(payload.begin(), payload.end());
  return s;
}

double MeasuredBpp(size_t stream_len_bytes, const ImageMeta& meta) {
  const double pixels =
      static_cast<double>(meta.true_width) * static_cast<double>(meta.true_height);
  if (pixels <= 0.0) ThrowInvalid("MeasuredBpp: zero-area image");
  return 8.0 * static_cast<double>(stream_len_bytes) / pixels;
}

}  // namespace itic
