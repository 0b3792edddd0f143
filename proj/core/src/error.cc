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

#include "itic/error.h"

namespace itic {

const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kCodec:
      return "codec";
    case ErrorCode::kCorruptStream:
      return "corrupt-stream";
  }
  return "unknown";
}

const char* ToString(StreamErrorKind kind) {
  switch (kind) {
    case StreamErrorKind::kNone:
      return "none";
    case StreamErrorKind::kBadMagic:
      return "bad-magic";
    case StreamErrorKind::kUnsupportedVersion:
      return "unsupported-version";
    case StreamErrorKind::kCrcMismatch:
      return "crc-mismatch";
    case StreamErrorKind::kTruncated:
      return "truncated";
    case StreamErrorKind::kInvalidHeader:
      return "invalid-header";
    case StreamErrorKind::kEntropyDesync:
      return "entropy-desync";
  }
  return "unknown";
}

void ThrowIo(const std::string& what) { throw Error(ErrorCode::kIo, what); }

void ThrowInvalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArgument, what);
}

void ThrowCodec(const std::string& what) {
  throw Error(ErrorCode::kCodec, what);
}

void ThrowStream(StreamErrorKind kind, const std::string& what) {
  throw Error(ErrorCode::kCorruptStream,
              std::string(ToString(kind)) + ": " + what, kind);
}

}  // namespace itic
