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

#include "qchaos/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qchaos/error.hpp"

namespace qchaos::poly {

Coeffs trim(const Coeffs &p, double tol) {
  double mx = 0.0;
  for (double c : p) mx = std::max(mx, std::abs(c));
  Coeffs r = p;
  while (!r.empty() && std::abs(r.back()) <= tol * mx) r.pop_back();
  return r;
}

int degree(const Coeffs &p) { return static_cast<int>(trim(p).size()) - 1; }

Complex evaluate(const Coeffs &p, Complex x) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex evaluate(const ComplexCoeffs &p, Complex x) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Coeffs derivative(const Coeffs &p) {
  if (p.size() <= 1) return {0.0};
  Coeffs d(p.size() - 1);
  for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

Coeffs add(const Coeffs &a, const Coeffs &b) {
  Coeffs r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Coeffs subtract(const Coeffs &a, const Coeffs &b) { return add(a, scale(b, -1.0)); }

Coeffs multiply(const Coeffs &a, const Coeffs &b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Coeffs scale(const Coeffs &a, double k) {
  Coeffs r = a;
  for (double &c : r) c *= k;
  return r;
}

Division divide(const Coeffs &a, const Coeffs &b) {
  const Coeffs d = trim(b);
  if (d.empty()) throw Error(ErrorCode::kInvalidArgument, "division by the zero polynomial");
  Coeffs rem = trim(a);
  if (rem.size() < d.size()) return {{0.0}, rem.empty() ? Coeffs{0.0} : rem};
  Coeffs q(rem.size() - d.size() + 1, 0.0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const double t = rem[k + d.size() - 1] / d.back();
    q[k] = t;
    for (std::size_t j = 0; j < d.size(); ++j) rem[k + j] -= t * d[j];
  }
  rem.resize(d.size() - 1);
  if (rem.empty()) rem.push_back(0.0);
  return {q, rem};
}

std::vector<Complex> roots(const Coeffs &p, int polish_steps) {
  const Coeffs c = trim(p);
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  std::vector<Complex> out;
  // Zero roots from vanishing low-order coefficients are exact; strip them.
  std::size_t lead_zero = 0;
  while (lead_zero < c.size() && c[lead_zero] == 0.0) ++lead_zero;
  for (std::size_t i = 0; i < lead_zero; ++i) out.emplace_back(0.0, 0.0);
  const Coeffs r(c.begin() + static_cast<std::ptrdiff_t>(lead_zero), c.end());
  const int m = static_cast<int>(r.size()) - 1;
  if (m >= 1) {
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) comp(i, m - 1) = -r[i] / r[m];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    const Coeffs dr = derivative(r);
    for (int i = 0; i < m; ++i) {
      Complex x = es.eigenvalues()[i];
      for (int k = 0; k < polish_steps; ++k) {
        const Complex fx = evaluate(r, x);
        const Complex dx = evaluate(dr, x);
        if (dx == Complex(0.0)) break;
        const Complex nx = x - fx / dx;
        // Accept the step only if it does not make the residual worse.
        if (!(std::abs(evaluate(r, nx)) <= std::abs(fx))) break;
        x = nx;
      }
      out.push_back(x);
    }
  }
  return out;
}

std::vector<double> real_roots(const Coeffs &p, double imag_tol) {
  std::vector<double> out;
  for (const Complex &z : roots(p)) {
    if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z.real()))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qchaos::poly
