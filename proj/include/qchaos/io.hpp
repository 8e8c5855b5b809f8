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

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qchaos/basin.hpp"
#include "qchaos/fractal.hpp"
#include "qchaos/julia.hpp"

namespace qchaos::io {

using Rgb = std::array<std::uint8_t, 3>;

/// Fixed palette:
///   TO_C1_EVEN      light blue  (135, 206, 250)
///   TO_C1_ODD       dark blue   (  0,  51, 153)
///   TO_C0           red         (204,  0,   0)
///   TO_SINGLE_PURE  teal        (  0, 128, 128)
///   TO_MIXED_CYCLE  orange      (255, 153,  0)
///   NON_CONVERGED   black, also used outside the plane's unit disk
Rgb palette(BasinKind kind);

/// Binary P6 image of the grid.
void write_ppm(std::ostream &out, const ClassificationGrid &grid);
/// Binary P6 image of a mask: white background, black boundary.
void write_ppm(std::ostream &out, const BoundaryMask &mask);

/// x_index,y_index,kind,iterations
void write_labels_csv(std::ostream &out, const ClassificationGrid &grid);
/// x,y per point (infinity written as inf,inf).
void write_points_csv(std::ostream &out, const PointCloud<ExtendedComplex> &cloud);
/// u,v,w per point.
void write_points_csv(std::ostream &out, const PointCloud<BlochVector> &cloud);
/// P,d,stderr,fit_r2 with empty fields where the mask was empty.
void write_curve_csv(std::ostream &out, const std::vector<ScanPoint> &curve);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace qchaos::io
