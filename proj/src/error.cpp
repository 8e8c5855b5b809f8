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

#include "qchaos/error.hpp"

namespace qchaos {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kNonPureInput:
      return "NonPureInput";
    case ErrorCode::kOffSphere:
      return "OffSphere";
    case ErrorCode::kProjectionPole:
      return "ProjectionPole";
    case ErrorCode::kZeroSuccessProbability:
      return "ZeroSuccessProbability";
    case ErrorCode::kDepthTooLarge:
      return "DepthTooLarge";
    case ErrorCode::kDeadEnd:
      return "DeadEnd";
    case ErrorCode::kNoC3:
      return "NoC3";
    case ErrorCode::kInvalidViewport:
      return "InvalidViewport";
    case ErrorCode::kEmptyMask:
      return "EmptyMask";
    case ErrorCode::kNoTransition:
      return "NoTransition";
    case ErrorCode::kNotFound:
      return "NotFound";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace qchaos
