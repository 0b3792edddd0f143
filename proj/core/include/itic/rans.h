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

#ifndef ITIC_RANS_H_
#define ITIC_RANS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "itic/entropy.h"

namespace itic {

// Range ANS with a 32-bit state in [2^16, 2^32), 16-bit renormalization words
// and 16-bit probabilities. Symbols are pushed in reverse so the decoder emits
// them in forward order.
//
// Payload layout: final encoder state (u32 LE) followed by the 16-bit words
// (LE) in the order the decoder consumes them. An empty input codes to the
// 4-byte initial state.
//
// Symbol i is coded with tables[i / run_length]. A symbol at or beyond a
// table's extreme bin is coded as that bin plus an escape: the overshoot
// magnitude as a 6-bit length and up to 31 raw bits, all with uniform
// frequencies. Single-symbol tables have no escape and only accept s_min.

std::vector<uint8_t> RansEncode(std::span<const int32_t> symbols,
                                std::span<const CdfTable> tables,
                                size_t run_length);

// Throws kCorruptStream/kTruncated when the payload runs out, and
// kCorruptStream/kEntropyDesync when the final state or byte count does not
// match what the encoder leaves behind.
std::vector<int32_t> RansDecode(std::span<const uint8_t> payload,
                                std::span<const CdfTable> tables,
                                size_t run_length, size_t count);

}  // namespace itic

#endif  // ITIC_RANS_H_
