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

#include "qchaos/dynamics.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "qchaos/error.hpp"

namespace qchaos {

HadamardAngles::HadamardAngles(ErrorAngle eps) {
  const double h = 0.5 * eps.radians();
  const double ch = std::cos(h);
  const double sh = std::sin(h);
  c = (ch - sh) * (0.5 * std::numbers::sqrt2);
  s = (ch + sh) * (0.5 * std::numbers::sqrt2);
}

ExtendedComplex f_eps(const ExtendedComplex &z, ErrorAngle eps) {
  const HadamardAngles k(eps);
  // z = [a : b] with a = z, b = 1, or [1 : 0] for infinity.
  Complex a = 1.0;
  Complex b = 0.0;
  if (z.is_finite()) {
    a = z.value();
    b = 1.0;
  }
  const Complex num = k.s * b * b - k.c * a * a;
  const Complex den = k.c * b * b + k.s * a * a;
  const double an = std::abs(num);
  const double ad = std::abs(den);
  if (ad <= DBL_EPSILON * an || ad == 0.0) return ExtendedComplex::infinity();
  return ExtendedComplex(num / den);
}

Complex f_eps_derivative(Complex z, ErrorAngle eps) {
  const HadamardAngles k(eps);
  const Complex d = k.c + k.s * z * z;
  return -2.0 * z / (d * d);
}

BlochVector bloch_step(const BlochVector &s, ErrorAngle eps) { return BlochMap(eps)(s); }

BlochVector z_to_bloch(const ExtendedComplex &z) {
  if (z.is_infinite()) return {0.0, 0.0, -1.0};
  const Complex x = z.value();
  const double n = std::norm(x);
  if (!std::isfinite(n)) return {0.0, 0.0, -1.0};
  const double inv = 1.0 / (1.0 + n);
  return {2.0 * x.real() * inv, 2.0 * x.imag() * inv, (1.0 - n) * inv};
}

ExtendedComplex bloch_to_z(const BlochVector &s, double tol) {
  if (std::abs(purity(s) - 1.0) > tol) {
    throw Error(ErrorCode::kNonPureInput,
                "purity " + std::to_string(purity(s)) + " is not 1 within tolerance");
  }
  if (s.w >= 0.0) return ExtendedComplex(Complex(s.u, s.v) / (1.0 + s.w));
  // Southern hemisphere: (u + iv)/(1 + w) = (1 - w)/(u - iv) on the sphere,
  // which avoids cancellation in 1 + w.
  const Complex q(s.u, -s.v);
  if (q == Complex(0.0, 0.0)) return ExtendedComplex::infinity();
  return ExtendedComplex((1.0 - s.w) / q);
}

PlanePoint stereographic_project(const BlochVector &s, double P, double tol) {
  if (!(P > 0.5 && P <= 1.0 + tol)) {
    throw Error(ErrorCode::kInvalidArgument, "purity must lie in (1/2, 1]");
  }
  const double r2 = 2.0 * P - 1.0;
  if (std::abs(s.norm2() - r2) > tol) {
    throw Error(ErrorCode::kOffSphere, "state is not on the sphere of purity " + std::to_string(P));
  }
  const double R = std::sqrt(r2);
  const double den = R + s.w;
  if (den <= tol * R && s.u * s.u + s.v * s.v <= tol) {
    throw Error(ErrorCode::kProjectionPole, "south pole has no finite projection");
  }
  if (den <= 0.0) {
    throw Error(ErrorCode::kProjectionPole, "south pole has no finite projection");
  }
  return {s.u / den, s.v / den};
}

BlochVector stereographic_unproject(PlanePoint p, double P) {
  const double R = std::sqrt(2.0 * P - 1.0);
  const double n = p.x * p.x + p.y * p.y;
  const double k = R / (1.0 + n);
  return {2.0 * p.x * k, 2.0 * p.y * k, (1.0 - n) * k};
}

}  // namespace qchaos
