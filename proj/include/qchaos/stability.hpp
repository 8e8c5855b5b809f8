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

#include <Eigen/Core>
#include <optional>
#include <string_view>
#include <vector>

#include "qchaos/dynamics.hpp"
#include "qchaos/types.hpp"

namespace qchaos {

enum class Stability { kAttracting, kRepelling, kNeutral };

/// |lambda - 1| below this is reported as neutral.
inline constexpr double kNeutralBand = 1e-6;

Stability classify_stability(double multiplier, double band = kNeutralBand);

/// Names used in output: C0 is the maximally mixed state, C1 the pure
/// 2-cycle (C1_1 the point with larger w), C2 the real pure fixed point, C3 the
/// mixed repelling fixed point on the v = 0 plane.
enum class PointRole {
  kC0,
  kC1First,
  kC1Second,
  kC2,
  kC3,
  kPureFixed,
  kPlaneFixed,
  kSinglePure,
  kDetected,
};

std::string_view to_string(Stability s);
std::string_view to_string(PointRole r);

struct PeriodicPoint {
  BlochVector location;
  std::optional<ExtendedComplex> z;  // set for points of the pure map
  int period = 1;
  double multiplier = 0.0;
  Stability stability = Stability::kNeutral;
  double purity = 1.0;
  PointRole role = PointRole::kPlaneFixed;
  /// All points of the cycle, orbit[0] == location.
  std::vector<BlochVector> orbit;
  /// |map^period(location) - location|.
  double residual = 0.0;
};

/// Analytic Jacobian of bloch_step.
Eigen::Matrix3d jacobian(const BlochVector &s, ErrorAngle eps);

/// Central differences with step h; used as a test oracle.
Eigen::Matrix3d jacobian_fd(const BlochVector &s, ErrorAngle eps, double h = 1e-6);

double spectral_radius(const Eigen::Matrix3d &m);

/// Spectral radius of the product of Jacobians along the orbit, restricted
/// to the tangent plane of the unit sphere at orbit[0]. Orbit must be pure.
double tangent_multiplier(const std::vector<BlochVector> &orbit, ErrorAngle eps);

/// Roots of s z^3 + c z^2 + c z - s = 0. The real root comes first and is
/// tagged C2.
std::vector<PeriodicPoint> pure_fixed_points(ErrorAngle eps);

/// Genuine 2-cycle of f, from the period-2 quintic divided by the fixed-point
/// cubic. Empty only when the quadratic degenerates. After the attracting pair
/// merges (around -21.5 degrees) the quadratic has complex roots; that cycle is
/// still returned, labeled repelling.
std::vector<PeriodicPoint> pure_two_cycles(ErrorAngle eps);

/// All fixed points (u, 0, w) with u^2 + w^2 <= 1, from a one-variable
/// elimination polynomial, merged with Newton solves seeded on a 32 x 32 grid.
std::vector<PeriodicPoint> invariant_plane_fixed_points(ErrorAngle eps);

/// The mixed repelling plane fixed point C3, if one exists.
std::optional<PeriodicPoint> mixed_repelling_fixed_point(ErrorAngle eps);

/// 2 |sin eps|, the spectral radius of the Jacobian at the origin.
double c0_multiplier(ErrorAngle eps);

struct CycleSearch {
  int transient = 2000;
  int max_iter = 20000;
  /// Largest period tried.
  int max_period = 512;
  double tol = 1e-9;
};

/// Forward-iterates past a transient and looks for the smallest lag p with
/// |x_{n+p} - x_n| < tol over the stored tail. Genuine cycles are then
/// refined by further iteration. Throws NotFound.
PeriodicPoint detect_long_cycle(const BlochVector &seed, ErrorAngle eps,
                                const CycleSearch &opts = {});

struct InventoryOptions {
  bool search_long_cycles = true;
  int seed_grid = 16;
  CycleSearch cycle{2000, 20000, 512, 1e-3};
};

struct AttractorInventory {
  ErrorAngle epsilon;
  /// Attracting pure cycles and fixed points.
  std::vector<PeriodicPoint> pure_attractors;
  std::vector<PeriodicPoint> pure_fixed;
  std::vector<PeriodicPoint> pure_cycles;
  std::vector<PeriodicPoint> mixed_fixed_points;
  PeriodicPoint c0_stability;
  std::vector<PeriodicPoint> detected_long_cycles;

  /// The attracting 2-cycle, if any.
  const PeriodicPoint *attracting_two_cycle() const;
};

AttractorInventory build_inventory(ErrorAngle eps, const InventoryOptions &opts = {});

}  // namespace qchaos
