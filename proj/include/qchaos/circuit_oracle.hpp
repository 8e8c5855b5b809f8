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

#include "qchaos/types.hpp"

// Brute-force two-qubit simulation of one protocol step. Deliberately written
// with plain fixed-size arrays and explicit loops so that it can serve as an
// independent check of the closed-form maps.
namespace qchaos::oracle {

using Matrix2 = std::array<std::array<Complex, 2>, 2>;
using Matrix4 = std::array<std::array<Complex, 4>, 4>;

Matrix2 multiply(const Matrix2 &a, const Matrix2 &b);
Matrix2 adjoint(const Matrix2 &a);
Matrix4 multiply(const Matrix4 &a, const Matrix4 &b);
Matrix4 adjoint(const Matrix4 &a);
Matrix4 kron(const Matrix2 &a, const Matrix2 &b);
double max_abs_diff(const Matrix2 &a, const Matrix2 &b);

/// Single-qubit density matrix, row-major.
struct DensityMatrix2x2 {
  Matrix2 m{};

  static DensityMatrix2x2 from_bloch(const BlochVector &s);
  static DensityMatrix2x2 from_pure(const ExtendedComplex &z);
  BlochVector to_bloch() const;
  Complex trace() const { return m[0][0] + m[1][1]; }
  /// Hermitian, unit trace and PSD, all within tol.
  bool is_physical(double tol = 1e-12) const;
};

/// Z_theta = diag(e^{-i theta/2}, e^{i theta/2}).
Matrix2 rotation_z(double theta);
/// X_theta = exp(-i theta X / 2).
Matrix2 rotation_x(double theta);

/// Hadamard gate realized as Z(pi/2) X(pi/2 + eps) Z(pi/2), global phase removed.
struct FaultyHadamard {
  ErrorAngle epsilon;
  Matrix2 matrix{};

  static FaultyHadamard build(ErrorAngle eps);
};

struct CircuitStep {
  DensityMatrix2x2 rho_out;
  double p_success = 0.0;
};

/// rho (x) rho -> CNOT (first qubit controls) -> keep the control when the
/// target reads 0 -> apply the faulty Hadamard. Throws ZeroSuccessProbability
/// when the outcome 0 has probability below 1e-15.
CircuitStep step_via_circuit(const DensityMatrix2x2 &rho, ErrorAngle eps);

/// H (rho .* rho) H^dagger / Tr(rho .* rho), with .* the elementwise product.
DensityMatrix2x2 hadamard_product_step(const DensityMatrix2x2 &rho, ErrorAngle eps);

/// Tr(rho .* rho) = (1 + w^2) / 2.
double success_probability(const BlochVector &s);

}  // namespace qchaos::oracle
