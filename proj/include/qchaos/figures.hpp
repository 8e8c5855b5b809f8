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

#include <string>
#include <vector>

namespace qchaos::figures {

struct FigureOptions {
  std::string out_dir = ".";
  int resolution = 512;
  /// Samples per Monte Carlo point.
  long mc_samples = 1000000;
};

/// Identifiers accepted by reproduce().
std::vector<std::string> known_ids();

/// Runs the pinned pipeline for one figure and returns the files written.
/// Throws qchaos::Error(InvalidArgument) for unknown ids.
std::vector<std::string> reproduce(const std::string &id, const FigureOptions &opts);

}  // namespace qchaos::figures
