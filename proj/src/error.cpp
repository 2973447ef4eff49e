// Copyright 2026 The PMSE Toolkit Authors
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

#include "pmse/error.hpp"

namespace pmse {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidParams: return "invalid params";
    case ErrorCode::kUnknownSet: return "unknown permutation set";
    case ErrorCode::kMalformedSet: return "malformed permutation set";
    case ErrorCode::kTooShort: return "input too short";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kZeroVariance: return "zero variance";
    case ErrorCode::kRandomSourceUnavailable: return "random source unavailable";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kUnsupportedMaxval: return "unsupported maxval";
    case ErrorCode::kTruncatedPayload: return "truncated payload";
    case ErrorCode::kIoFailure: return "i/o failure";
    case ErrorCode::kTemplateMissingSlot: return "template missing slot";
    case ErrorCode::kNotABlock: return "not a block";
    case ErrorCode::kSchemaVersionUnknown: return "unknown block schema version";
    case ErrorCode::kNotAChainLink: return "not a chain link";
    case ErrorCode::kMalformedEncoding: return "malformed encoding";
  }
  return "unknown error";
}

}  // namespace pmse
