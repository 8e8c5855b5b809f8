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

#include <cstdint>
#include <optional>
#include <vector>

#include "qchaos/basin.hpp"

namespace qchaos {

struct BoundaryPolicy {
  /// Also mark interfaces with the C0 basin, mixed-cycle basins and
  /// non-converged pixels. Off by default: only boundaries between different
  /// pure basins are kept.
  bool include_c0 = false;
};

struct BoundaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BoundaryMask() = default;
  BoundaryMask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  bool at(int i, int j) const { return bits[static_cast<std::size_t>(j) * width + i] != 0; }
  void set(int i, int j, bool on = true) { bits[static_cast<std::size_t>(j) * width + i] = on; }
  std::size_t count() const;
};

/// A pixel is marked iff one of its 4-neighbours has a different label that
/// the policy counts as a separate region.
BoundaryMask extract_boundary(const ClassificationGrid &grid, BoundaryPolicy policy = {});
BoundaryMask extract_boundary(const std::vector<ClassificationLabel> &labels, int width,
                              int height, BoundaryPolicy policy = {});

struct DimensionEstimate {
  double d = 0.0;
  double standard_error = 0.0;
  double fit_r2 = 0.0;
  std::vector<int> box_sizes;
  /// Occupied boxes per size (averaged over offsets when enabled).
  std::vector<double> counts;
};

inline const std::vector<int> kDefaultBoxSizes{2, 4, 8, 16, 32, 64};

/// Least-squares slope of log N(delta) against log(1/delta), boxes anchored
/// at pixel (0, 0). With offset averaging, counts are averaged over the four
/// grid shifts (0 or delta/2 in each axis). Throws EmptyMask.
DimensionEstimate box_count_dimension(const BoundaryMask &mask,
                                      const std::vector<int> &sizes = kDefaultBoxSizes,
                                      bool offset_average = false);

// Synthetic masks with known dimension.
BoundaryMask diagonal_line_mask(int n);
BoundaryMask filled_disk_mask(int n);
/// Carpet of 3^depth cells, each drawn as a cell x cell pixel block.
BoundaryMask sierpinski_carpet_mask(int depth, int cell = 1);

struct ScanParams {
  int resolution = 512;
  Viewport viewport{-2.0, 2.0, -2.0, 2.0};
  ClassifyParams classify;
  BoundaryPolicy policy;
  std::vector<int> box_sizes = kDefaultBoxSizes;
  bool offset_average = false;
};

struct ScanPoint {
  double purity = 0.0;
  /// Empty when the boundary mask was empty.
  std::optional<DimensionEstimate> estimate;
  std::size_t boundary_pixels = 0;
};

/// Renders the purity sphere for each P and box-counts the basin boundary.
std::vector<ScanPoint> dimension_vs_purity(ErrorAngle eps, const std::vector<double> &purities,
                                           const ScanParams &params = {});
std::vector<ScanPoint> dimension_vs_purity(const AttractorInventory &inv,
                                           const std::vector<double> &purities,
                                           const ScanParams &params = {});

struct CriticalPurityEstimate {
  double p_c_est = 0.0;
  double uncertainty = 0.0;
  double plateau = 0.0;
  double threshold = 0.0;
};

/// Plateau = mean d over the top quarter of the samples (at least 3);
/// threshold tau = 1 + (plateau - 1) / 2. Scanning down from the largest P,
/// the estimate is the first grid purity with d < tau or no boundary at all.
/// Throws NoTransition.
CriticalPurityEstimate estimate_critical_purity_from_scan(const std::vector<ScanPoint> &curve);

/// from, from + step, ... up to and including `to` (within step / 1000).
std::vector<double> purity_grid(double from, double to, double step);

}  // namespace qchaos
