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

#include "qchaos/types.hpp"

namespace qchaos {

/// c = cos(pi/4 + eps/2), s = sin(pi/4 + eps/2). Computed from the half angle
/// so that c == s bit-for-bit at eps = 0.
struct HadamardAngles {
  double c;
  double s;

  explicit HadamardAngles(ErrorAngle eps);
};

/// Pure-state map f(z) = (s - c z^2) / (c + s z^2) on the Riemann sphere.
///
/// Evaluated in homogeneous coordinates, so poles give INFINITY instead of
/// inf/NaN arithmetic.
ExtendedComplex f_eps(const ExtendedComplex &z, ErrorAngle eps);

/// f'(z) = -2 z / (c + s z^2)^2. Only meaningful at finite, non-pole z.
Complex f_eps_derivative(Complex z, ErrorAngle eps);

/// Forward Bloch-ball map. With d = 1 + w^2 and g = u^2 - v^2:
///   u' = (2 w cos e + g sin e) / d
///   v' = -2 u v / d
///   w' = (g cos e - 2 w sin e) / d
BlochVector bloch_step(const BlochVector &s, ErrorAngle eps);

/// Same map with the trigonometry hoisted; use in tight loops.
class BlochMap {
 public:
  explicit BlochMap(ErrorAngle eps)
      : eps_(eps), cos_(std::cos(eps.radians())), sin_(std::sin(eps.radians())) {}

  BlochVector operator()(const BlochVector &s) const {
    const double inv_d = 1.0 / (1.0 + s.w * s.w);
    const double g = s.u * s.u - s.v * s.v;
    return {(2.0 * s.w * cos_ + g * sin_) * inv_d, -2.0 * s.u * s.v * inv_d,
            (g * cos_ - 2.0 * s.w * sin_) * inv_d};
  }

  ErrorAngle eps() const { return eps_; }
  double cos_eps() const { return cos_; }
  double sin_eps() const { return sin_; }

 private:
  ErrorAngle eps_;
  double cos_;
  double sin_;
};

/// Pure state |0> + z|1>  ->  Bloch vector on the unit sphere.
BlochVector z_to_bloch(const ExtendedComplex &z);

/// Inverse of z_to_bloch. Throws NonPureInput if |purity - 1| > tol.
ExtendedComplex bloch_to_z(const BlochVector &s, double tol = kPhysicalTol);

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Projection of the purity-P sphere from its south pole:
/// x + i y = (u + i v) / (sqrt(2P - 1) + w).
///
/// Throws OffSphere if |s|^2 differs from 2P - 1 by more than tol, and
/// ProjectionPole at the south pole.
PlanePoint stereographic_project(const BlochVector &s, double P, double tol = kPhysicalTol);

/// Inverse projection onto the sphere of purity P. Total.
BlochVector stereographic_unproject(PlanePoint p, double P);

}  // namespace qchaos
