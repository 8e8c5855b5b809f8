// Copyright 2026 The qchaos Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qchaos {

enum class ErrorCode {
  kInvalidArgument,
  kNonPureInput,
  kOffSphere,
  kProjectionPole,
  kZeroSuccessProbability,
  kDepthTooLarge,
  kDeadEnd,
  kNoC3,
  kInvalidViewport,
  kEmptyMask,
  kNoTransition,
  kNotFound,
};

std::string_view to_string(ErrorCode code);

/// Computation error carrying a machine-readable code. The CLI maps these to
/// exit status 1 with a structured message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qchaos
