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

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>

namespace qchaos {

using Complex = std::complex<double>;

/// Default tolerance for u^2 + v^2 + w^2 <= 1 and for purity == 1 checks.
inline constexpr double kPhysicalTol = 1e-9;

enum class AngleUnit { kDegrees, kPercent, kRadians };

/// Coherent error of the miscalibrated X rotation inside the Hadamard gate.
///
/// Stored in radians. Percent is relative to the ideal 90 degree rotation, so
/// 5 % corresponds to 4.5 degrees.
class ErrorAngle {
 public:
  constexpr ErrorAngle() = default;

  static constexpr ErrorAngle from_radians(double rad) { return ErrorAngle(rad); }
  static constexpr ErrorAngle from_degrees(double deg) {
    return ErrorAngle(deg * (std::numbers::pi / 180.0));
  }
  static constexpr ErrorAngle from_percent(double pct) {
    return ErrorAngle(pct * (std::numbers::pi / 200.0));
  }
  static constexpr ErrorAngle from(double value, AngleUnit unit) {
    switch (unit) {
      case AngleUnit::kDegrees:
        return from_degrees(value);
      case AngleUnit::kPercent:
        return from_percent(value);
      case AngleUnit::kRadians:
        break;
    }
    return from_radians(value);
  }

  constexpr double radians() const { return rad_; }
  constexpr double degrees() const { return rad_ * (180.0 / std::numbers::pi); }
  constexpr double percent() const { return rad_ * (200.0 / std::numbers::pi); }

  friend constexpr bool operator==(ErrorAngle, ErrorAngle) = default;

 private:
  constexpr explicit ErrorAngle(double rad) : rad_(rad) {}
  double rad_ = 0.0;
};

/// A point of the Riemann sphere: a finite complex number or the single
/// unsigned point at infinity.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  /// Non-finite components map to infinity; NaN is rejected.
  ExtendedComplex(Complex z);  // NOLINT(google-explicit-constructor)
  ExtendedComplex(double re, double im = 0.0) : ExtendedComplex(Complex(re, im)) {}

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex z;
    z.infinite_ = true;
    return z;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// The finite value; (0, 0) for infinity.
  constexpr Complex value() const { return z_; }

  friend bool operator==(const ExtendedComplex &a, const ExtendedComplex &b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{};
  bool infinite_ = false;
};

/// Chordal distance on the Riemann sphere (bounded by 2, well-defined at infinity).
double chordal_distance(const ExtendedComplex &a, const ExtendedComplex &b);

/// Bloch coordinates (u, v, w) of a single-qubit density matrix
/// rho = (1/2) [[1 + w, u - i v], [u + i v, 1 - w]].
struct BlochVector {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  constexpr double norm2() const { return u * u + v * v + w * w; }
  double norm() const { return std::sqrt(norm2()); }

  friend constexpr BlochVector operator+(BlochVector a, BlochVector b) {
    return {a.u + b.u, a.v + b.v, a.w + b.w};
  }
  friend constexpr BlochVector operator-(BlochVector a, BlochVector b) {
    return {a.u - b.u, a.v - b.v, a.w - b.w};
  }
  friend constexpr BlochVector operator*(double k, BlochVector a) {
    return {k * a.u, k * a.v, k * a.w};
  }
  friend constexpr bool operator==(const BlochVector &, const BlochVector &) = default;
};

/// Tr(rho^2) = (1 + u^2 + v^2 + w^2) / 2.
constexpr double purity(const BlochVector &s) { return 0.5 * (1.0 + s.norm2()); }

inline double distance(const BlochVector &a, const BlochVector &b) { return (a - b).norm(); }

constexpr bool is_physical(const BlochVector &s, double tol = kPhysicalTol) {
  return s.norm2() <= 1.0 + tol;
}

std::string_view to_string(AngleUnit unit);

}  // namespace qchaos
