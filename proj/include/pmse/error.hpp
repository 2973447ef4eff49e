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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmse {

enum class ErrorCode {
  kInvalidParams,
  kUnknownSet,
  kMalformedSet,
  kTooShort,
  kLengthMismatch,
  kZeroVariance,
  kRandomSourceUnavailable,
  kMalformedHeader,
  kUnsupportedMaxval,
  kTruncatedPayload,
  kIoFailure,
  kTemplateMissingSlot,
  kNotABlock,
  kSchemaVersionUnknown,
  kNotAChainLink,
  kMalformedEncoding,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library surfaces as this exception; the
/// code identifies the failure class so callers (and the CLI exit-code map)
/// can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pmse
