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

#include "qchaos/circuit_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qchaos/error.hpp"

namespace qchaos::oracle {

namespace {

constexpr double kMinSuccess = 1e-15;
const Complex kI(0.0, 1.0);

}  // namespace

Matrix2 multiply(const Matrix2 &a, const Matrix2 &b) {
  Matrix2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Matrix2 adjoint(const Matrix2 &a) {
  Matrix2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = std::conj(a[j][i]);
  return r;
}

Matrix4 multiply(const Matrix4 &a, const Matrix4 &b) {
  Matrix4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Matrix4 adjoint(const Matrix4 &a) {
  Matrix4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = std::conj(a[j][i]);
  return r;
}

Matrix4 kron(const Matrix2 &a, const Matrix2 &b) {
  Matrix4 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return r;
}

double max_abs_diff(const Matrix2 &a, const Matrix2 &b) {
  double e = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) e = std::max(e, std::abs(a[i][j] - b[i][j]));
  return e;
}

DensityMatrix2x2 DensityMatrix2x2::from_bloch(const BlochVector &s) {
  DensityMatrix2x2 r;
  r.m[0][0] = 0.5 * (1.0 + s.w);
  r.m[0][1] = 0.5 * Complex(s.u, -s.v);
  r.m[1][0] = 0.5 * Complex(s.u, s.v);
  r.m[1][1] = 0.5 * (1.0 - s.w);
  return r;
}

DensityMatrix2x2 DensityMatrix2x2::from_pure(const ExtendedComplex &z) {
  // |psi> = (|0> + z|1>) / sqrt(1 + |z|^2), or |1> at infinity.
  std::array<Complex, 2> psi{Complex(0.0), Complex(1.0)};
  if (z.is_finite()) {
    const double n = std::sqrt(1.0 + std::norm(z.value()));
    psi = {1.0 / n, z.value() / n};
  }
  DensityMatrix2x2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = psi[i] * std::conj(psi[j]);
  return r;
}

BlochVector DensityMatrix2x2::to_bloch() const {
  // u = 2 Re rho10, v = 2 Im rho10, w = rho00 - rho11.
  return {2.0 * m[1][0].real(), 2.0 * m[1][0].imag(), (m[0][0] - m[1][1]).real()};
}

bool DensityMatrix2x2::is_physical(double tol) const {
  if (std::abs(m[0][1] - std::conj(m[1][0])) > tol) return false;
  if (std::abs(m[0][0].imag()) > tol || std::abs(m[1][1].imag()) > tol) return false;
  if (std::abs(trace() - 1.0) > tol) return false;
  // 2x2 Hermitian: eigenvalues are (t +- sqrt((a-d)^2 + 4|b|^2)) / 2.
  const double a = m[0][0].real();
  const double d = m[1][1].real();
  const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(m[1][0]));
  return 0.5 * (a + d - disc) >= -tol;
}

Matrix2 rotation_z(double theta) {
  Matrix2 r{};
  r[0][0] = std::exp(-kI * (0.5 * theta));
  r[1][1] = std::exp(kI * (0.5 * theta));
  return r;
}

Matrix2 rotation_x(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Matrix2 r{};
  r[0][0] = c;
  r[0][1] = -kI * s;
  r[1][0] = -kI * s;
  r[1][1] = c;
  return r;
}

FaultyHadamard FaultyHadamard::build(ErrorAngle eps) {
  const double half_pi = 0.5 * std::numbers::pi;
  const Matrix2 g = multiply(multiply(rotation_z(half_pi), rotation_x(half_pi + eps.radians())),
                             rotation_z(half_pi));
  // Remove the global phase: rotate the largest entry onto the positive reals.
  int bi = 0, bj = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(g[i][j]) > std::abs(g[bi][bj])) bi = i, bj = j;
  const Complex phase = std::conj(g[bi][bj]) / std::abs(g[bi][bj]);
  FaultyHadamard h{eps, {}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) h.matrix[i][j] = g[i][j] * phase;
  return h;
}

CircuitStep step_via_circuit(const DensityMatrix2x2 &rho, ErrorAngle eps) {
  const Matrix4 joint = kron(rho.m, rho.m);
  Matrix4 cnot{};
  cnot[0][0] = cnot[1][1] = 1.0;
  cnot[2][3] = cnot[3][2] = 1.0;
  const Matrix4 after = multiply(multiply(cnot, joint), adjoint(cnot));
  // Basis |control target>; target = 0 keeps indices 0 (|00>) and 2 (|10>).
  Matrix2 kept{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) kept[i][j] = after[2 * i][2 * j];
  const double p = (kept[0][0] + kept[1][1]).real();
  if (!(p >= kMinSuccess)) {
    throw Error(ErrorCode::kZeroSuccessProbability, "post-selection outcome 0 is impossible");
  }
  for (auto &row : kept)
    for (auto &x : row) x /= p;
  const Matrix2 h = FaultyHadamard::build(eps).matrix;
  CircuitStep out;
  out.rho_out.m = multiply(multiply(h, kept), adjoint(h));
  out.p_success = p;
  return out;
}

DensityMatrix2x2 hadamard_product_step(const DensityMatrix2x2 &rho, ErrorAngle eps) {
  Matrix2 sq{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sq[i][j] = rho.m[i][j] * rho.m[i][j];
  const double t = (sq[0][0] + sq[1][1]).real();
  if (!(t >= kMinSuccess)) {
    throw Error(ErrorCode::kZeroSuccessProbability, "Tr(rho .* rho) vanishes");
  }
  const Matrix2 h = FaultyHadamard::build(eps).matrix;
  DensityMatrix2x2 out;
  out.m = multiply(multiply(h, sq), adjoint(h));
  for (auto &row : out.m)
    for (auto &x : row) x /= t;
  return out;
}

double success_probability(const BlochVector &s) { return 0.5 * (1.0 + s.w * s.w); }

}  // namespace qchaos::oracle
