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

#ifndef ITIC_ERROR_H_
#define ITIC_ERROR_H_

#include <stdexcept>
#include <string>

namespace itic {

// Broad failure classes. The CLI maps each to a distinct exit code.
enum class ErrorCode {
  kIo,               // file missing, unreadable, unwritable
  kInvalidArgument,  // caller passed something the contract forbids
  kCodec,            // shape/weights/model failure inside the pipeline
  kCorruptStream,    // bitstream failed validation or decoding
};

// Finer classification of kCorruptStream failures.
enum class StreamErrorKind {
  kNone,
  kBadMagic,
  kUnsupportedVersion,
  kCrcMismatch,
  kTruncated,
  kInvalidHeader,
  kEntropyDesync,
};

const char* ToString(ErrorCode code);
const char* ToString(StreamErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        StreamErrorKind stream_kind = StreamErrorKind::kNone)
      : std::runtime_error(what), code_(code), stream_kind_(stream_kind) {}

  ErrorCode code() const { return code_; }
  StreamErrorKind stream_kind() const { return stream_kind_; }

 private:
  ErrorCode code_;
  StreamErrorKind stream_kind_;
};

[[noreturn]] void ThrowIo(const std::string& what);
[[noreturn]] void ThrowInvalid(const std::string& what);
[[noreturn]] void ThrowCodec(const std::string& what);
[[noreturn]] void ThrowStream(StreamErrorKind kind, const std::string& what);

}  // namespace itic

#endif  // ITIC_ERROR_H_
