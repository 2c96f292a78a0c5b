// Copyright 2026 The fockbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOCKBELL_ERROR_H_
#define FOCKBELL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fockbell {

enum class ErrorCode {
  kInvalidOccupation,
  kTruncationViolation,
  kRegisterMismatch,
  kNonUnitary,
  kPhotonLimit,
  kZeroNorm,
  kOutOfRange,
  kDegenerateCavity,
  kNullEvent,
  kInvalidArm,
  kTruncationTooSmall,
  kInvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI, the Python bindings) can map it without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fockbell

#endif  // FOCKBELL_ERROR_H_
