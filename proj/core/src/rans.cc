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

#include "itic/rans.h"

#include <algorithm>
#include <bit>
#include <string>

#include "itic/error.h"

namespace itic {

namespace {

constexpr uint32_t kStateLow = 1u << 16;
constexpr uint32_t kEscapeLengthBits = 6;

struct Op {
  uint32_t start;
  uint32_t freq;
};

// Uniform op over 2^bits values, bits in [0, 16].
Op UniformOp(uint32_t value, uint32_t bits) {
  const uint32_t freq = kProbScale >> bits;
  return {value * freq, freq};
}

void CheckTables(std::span<const CdfTable> tables, size_t run_length,
                 size_t count) {
  if (count == 0) return;
  if (run_length == 0) ThrowInvalid("rANS: run_length must be positive");
  if ((count - 1) / run_length >= tables.size()) {
    ThrowInvalid("rANS: not enough tables for " + std::to_string(count) +
                 " symbols");
  }
}

// Appends the ops for one symbol in decode order.
void SymbolOps(int32_t s, const CdfTable& t, std::vector<Op>* ops) {
  if (t.size() == 1) {
    if (s != t.s_min) {
      ThrowInvalid("rANS: symbol " + std::to_string(s) +
                   " outside single-symbol table");
    }
    ops->push_back({0, kProbScale});
    return;
  }
  uint64_t overshoot = 0;
  int32_t bin = s;
  bool escape = false;
  if (s <= t.s_min) {
    bin = t.s_min;
    overshoot = static_cast<uint64_t>(int64_t{t.s_min} - s);
    escape = true;
  } else if (s >= t.s_max) {
    bin = t.s_max;
    overshoot = static_cast<uint64_t>(int64_t{s} - t.s_max);
    escape = true;
  }
  ops->push_back({t.start(bin), t.freq(bin)});
  if (!escape) return;
  if (overshoot >> 32) ThrowInvalid("rANS: escape overshoot too large");
  const uint32_t e = static_cast<uint32_t>(overshoot);
  const uint32_t nbits = static_cast<uint32_t>(std::bit_width(e));
  ops->push_back(UniformOp(nbits, kEscapeLengthBits));
  if (nbits > 1) {
    // Leading one is implied; emit the rest high chunk first.
    uint32_t remaining = nbits - 1;
    while (remaining > 0) {
      const uint32_t chunk = std::min<uint32_t>(remaining, 16);
      remaining -= chunk;
      ops->push_back(UniformOp((e >> remaining) & ((1u << chunk) - 1), chunk));
    }
  }
}

class WordReader {
 public:
  explicit WordReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint32_t Read16() {
    if (bytes_.size() - pos_ < 2) {
      ThrowStream(StreamErrorKind::kTruncated, "rANS payload exhausted");
    }
    const uint32_t v = bytes_[pos_] | (uint32_t{bytes_[pos_ + 1]} << 8);
    pos_ += 2;
    return v;
  }
  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

class Decoder {
 public:
  explicit Decoder(std::span<const uint8_t> payload) : in_(payload) {
    state_ = in_.Read16();
    state_ |= in_.Read16() << 16;
    if (state_ < kStateLow) {
      ThrowStream(StreamErrorKind::kEntropyDesync, "rANS initial state invalid");
    }
  }

  uint32_t Peek() const { return state_ & (kProbScale - 1); }

  void Advance(uint32_t start, uint32_t freq) {
    state_ = freq * (state_ >> kProbBits) + Peek() - start;
    while (state_ < kStateLow) state_ = (state_ << 16) | in_.Read16();
  }

  uint32_t Uniform(uint32_t bits) {
    const uint32_t freq = kProbScale >> bits;
    const uint32_t v = Peek() / freq;
    Advance(v * freq, freq);
    return v;
  }

  void Finish() const {
    if (state_ != kStateLow || !in_.AtEnd()) {
      ThrowStream(StreamErrorKind::kEntropyDesync,
                  "rANS final state mismatch");
    }
  }

 private:
  WordReader in_;
  uint32_t state_ = 0;
};

}  // namespace

std::vector<uint8_t> RansEncode(std::span<const int32_t> symbols,
                                std::span<const CdfTable> tables,
                                size_t run_length) {
  CheckTables(tables, run_length, symbols.size());
  std::vector<Op> ops;
  ops.reserve(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) {
    SymbolOps(symbols[i], tables[i / run_length], &ops);
  }

  std::vector<uint16_t> words;  // in emission order (reverse of decode order)
  uint64_t state = kStateLow;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const uint64_t x_max = uint64_t{it->freq} << 16;
    if (state >= x_max) {
      words.push_back(static_cast<uint16_t>(state & 0xffff));
      state >>= 16;
    }
    state = ((state / it->freq) << kProbBits) + (state % it->freq) + it->start;
  }

  std::vector<uint8_t> out;
  out.reserve(4 + 2 * words.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(state >> (8 * i)));
  for (auto it = words.rbegin(); it != words.rend(); ++it) {
    out.push_back(static_cast<uint8_t>(*it & 0xff));
    out.push_back(static_cast<uint8_t>(*it >> 8));
  }
  return out;
}

std::vector<int32_t> RansDecode(std::span<const uint8_t> payload,
                                std::span<const CdfTable> tables,
                                size_t run_length, size_t count) {
  CheckTables(tables, run_length, count);
  Decoder dec(payload);
  std::vector<int32_t> out(count);
  for (size_t i = 0; i < count; ++i) {
    const CdfTable& t = tables[i / run_length];
    const uint32_t slot = dec.Peek();
    const auto it = std::upper_bound(t.cdf.begin() + 1, t.cdf.end(), slot);
    const size_t idx = static_cast<size_t>(it - t.cdf.begin()) - 1;
    const int32_t bin = static_cast<int32_t>(t.s_min + static_cast<int64_t>(idx));
    dec.Advance(t.cdf[idx], t.cdf[idx + 1] - t.cdf[idx]);
    int64_t value = bin;
    if (t.size() > 1 && (bin == t.s_min || bin == t.s_max)) {
      const uint32_t nbits = dec.Uniform(kEscapeLengthBits);
      if (nbits > 32) {
        ThrowStream(StreamErrorKind::kEntropyDesync, "rANS escape length");
      }
      uint64_t e = nbits == 0 ? 0 : 1;
      uint32_t remaining = nbits == 0 ? 0 : nbits - 1;
      while (remaining > 0) {
        const uint32_t chunk = std::min<uint32_t>(remaining, 16);
        remaining -= chunk;
        e = (e << chunk) | dec.Uniform(chunk);
      }
      value = bin == t.s_min ? value - static_cast<int64_t>(e)
                             : value + static_cast<int64_t>(e);
      if (value < INT32_MIN || value > INT32_MAX) {
        ThrowStream(StreamErrorKind::kEntropyDesync, "rANS escape overflow");
      }
    }
    out[i] = static_cast<int32_t>(value);
  }
  dec.Finish();
  return out;
}

}  // namespace itic
