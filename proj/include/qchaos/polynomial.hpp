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

#include <vector>

#include "qchaos/types.hpp"

// Dense polynomials with coefficients in ascending order: p[k] multiplies x^k.
namespace qchaos::poly {

using Coeffs = std::vector<double>;
using ComplexCoeffs = std::vector<Complex>;

/// Drops trailing coefficients whose magnitude is <= tol * max|p|.
Coeffs trim(const Coeffs &p, double tol = 0.0);

int degree(const Coeffs &p);
Complex evaluate(const Coeffs &p, Complex x);
Complex evaluate(const ComplexCoeffs &p, Complex x);
Coeffs derivative(const Coeffs &p);
Coeffs add(const Coeffs &a, const Coeffs &b);
Coeffs subtract(const Coeffs &a, const Coeffs &b);
Coeffs multiply(const Coeffs &a, const Coeffs &b);
Coeffs scale(const Coeffs &a, double k);

struct Division {
  Coeffs quotient;
  Coeffs remainder;
};

/// Long division a = q b + r with deg r < deg b.
Division divide(const Coeffs &a, const Coeffs &b);

/// All complex roots, from the eigenvalues of the companion matrix followed by
/// Newton polishing. Leading zero coefficients are trimmed first.
std::vector<Complex> roots(const Coeffs &p, int polish_steps = 3);

/// Real roots among roots(p): |Im| <= imag_tol * max(1, |Re|). Sorted ascending.
std::vector<double> real_roots(const Coeffs &p, double imag_tol = 1e-9);

}  // namespace qchaos::poly
