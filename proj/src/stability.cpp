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

#include "qchaos/stability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qchaos/error.hpp"
#include "qchaos/polynomial.hpp"

namespace qchaos {

namespace {

constexpr double kPureTol = 1e-9;
constexpr double kMergeDist = 1e-7;
constexpr double kFixedResidual = 1e-10;

double orbit_residual(const BlochVector &x, int period, const BlochMap &f) {
  BlochVector y = x;
  for (int k = 0; k < period; ++k) y = f(y);
  return distance(x, y);
}

PeriodicPoint make_pure_point(Complex z, int period, double multiplier, PointRole role,
                              ErrorAngle eps) {
  PeriodicPoint p;
  p.z = ExtendedComplex(z);
  p.location = z_to_bloch(*p.z);
  p.period = period;
  p.multiplier = multiplier;
  p.stability = classify_stability(multiplier);
  p.purity = purity(p.location);
  p.role = role;
  const BlochMap f(eps);
  p.orbit.push_back(p.location);
  for (int k = 1; k < period; ++k) p.orbit.push_back(f(p.orbit.back()));
  p.residual = orbit_residual(p.location, period, f);
  return p;
}

Eigen::Matrix3d orbit_jacobian(const std::vector<BlochVector> &orbit, ErrorAngle eps) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  for (const BlochVector &x : orbit) m = jacobian(x, eps) * m;
  return m;
}

// Newton on (u, w) -> F(u, 0, w) - (u, w).
std::optional<BlochVector> newton_plane(BlochVector x, const BlochMap &f, ErrorAngle eps) {
  for (int it = 0; it < 60; ++it) {
    const BlochVector y = f(x);
    const double r0 = y.u - x.u;
    const double r1 = y.w - x.w;
    if (std::hypot(r0, r1) < 1e-15) break;
    const Eigen::Matrix3d J = jacobian(x, eps);
    Eigen::Matrix2d A;
    A << J(0, 0) - 1.0, J(0, 2), J(2, 0), J(2, 2) - 1.0;
    const double det = A.determinant();
    if (std::abs(det) < 1e-300) return std::nullopt;
    const Eigen::Vector2d dx = A.inverse() * Eigen::Vector2d(r0, r1);
    x.u -= dx(0);
    x.w -= dx(1);
    if (!std::isfinite(x.u) || !std::isfinite(x.w) || x.u * x.u + x.w * x.w > 4.0) {
      return std::nullopt;
    }
  }
  x.v = 0.0;
  if (distance(f(x), x) > kFixedResidual) return std::nullopt;
  return x;
}

}  // namespace

Stability classify_stability(double multiplier, double band) {
  if (std::abs(multiplier - 1.0) < band) return Stability::kNeutral;
  return multiplier < 1.0 ? Stability::kAttracting : Stability::kRepelling;
}

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::kAttracting:
      return "ATTRACTING";
    case Stability::kRepelling:
      return "REPELLING";
    case Stability::kNeutral:
      return "NEUTRAL";
  }
  return "NEUTRAL";
}

std::string_view to_string(PointRole r) {
  switch (r) {
    case PointRole::kC0:
      return "C0";
    case PointRole::kC1First:
      return "C1_1";
    case PointRole::kC1Second:
      return "C1_2";
    case PointRole::kC2:
      return "C2";
    case PointRole::kC3:
      return "C3";
    case PointRole::kPureFixed:
      return "pure_fixed";
    case PointRole::kPlaneFixed:
      return "plane_fixed";
    case PointRole::kSinglePure:
      return "single_pure";
    case PointRole::kDetected:
      return "detected";
  }
  return "unknown";
}

Eigen::Matrix3d jacobian(const BlochVector &x, ErrorAngle eps) {
  const double ce = std::cos(eps.radians());
  const double se = std::sin(eps.radians());
  const BlochVector y = BlochMap(eps)(x);
  const double inv = 1.0 / (1.0 + x.w * x.w);
  const double u = x.u, v = x.v, w = x.w;
  Eigen::Matrix3d J;
  J << 2.0 * u * se * inv, -2.0 * v * se * inv, 2.0 * ce * inv - 2.0 * w * y.u * inv,
      -2.0 * v * inv, -2.0 * u * inv, -2.0 * w * y.v * inv,
      2.0 * u * ce * inv, -2.0 * v * ce * inv, -2.0 * se * inv - 2.0 * w * y.w * inv;
  return J;
}

Eigen::Matrix3d jacobian_fd(const BlochVector &x, ErrorAngle eps, double h) {
  const BlochMap f(eps);
  Eigen::Matrix3d J;
  for (int k = 0; k < 3; ++k) {
    BlochVector a = x, b = x;
    double *pa = k == 0 ? &a.u : k == 1 ? &a.v : &a.w;
    double *pb = k == 0 ? &b.u : k == 1 ? &b.v : &b.w;
    *pa += h;
    *pb -= h;
    const BlochVector d = (1.0 / (2.0 * h)) * (f(a) - f(b));
    J(0, k) = d.u;
    J(1, k) = d.v;
    J(2, k) = d.w;
  }
  return J;
}

double spectral_radius(const Eigen::Matrix3d &m) {
  Eigen::EigenSolver<Eigen::Matrix3d> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double tangent_multiplier(const std::vector<BlochVector> &orbit, ErrorAngle eps) {
  const Eigen::Matrix3d M = orbit_jacobian(orbit, eps);
  const Eigen::Vector3d n = Eigen::Vector3d(orbit[0].u, orbit[0].v, orbit[0].w).normalized();
  Eigen::Vector3d a = Eigen::Vector3d::UnitX();
  if (std::abs(n.dot(a)) > 0.6) a = Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = n.cross(a).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  Eigen::Matrix<double, 3, 2> E;
  E << e1, e2;
  const Eigen::Matrix2d B = E.transpose() * M * E;
  Eigen::EigenSolver<Eigen::Matrix2d> es(B, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<PeriodicPoint> pure_fixed_points(ErrorAngle eps) {
  const HadamardAngles k(eps);
  const std::vector<Complex> zs = poly::roots({-k.s, k.c, k.c, k.s});
  // The cubic has real coefficients and odd degree: the root with the
  // smallest imaginary part is the real one.
  std::vector<Complex> sorted(zs.begin(), zs.end());
  std::sort(sorted.begin(), sorted.end(), [](Complex a, Complex b) {
    if (std::abs(a.imag()) != std::abs(b.imag())) return std::abs(a.imag()) < std::abs(b.imag());
    return a.imag() > b.imag();
  });
  std::vector<PeriodicPoint> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    Complex z = sorted[i];
    if (i == 0) z = Complex(z.real(), 0.0);
    const double lambda = std::abs(f_eps_derivative(z, eps));
    out.push_back(make_pure_point(z, 1, lambda, i == 0 ? PointRole::kC2 : PointRole::kPureFixed, eps));
  }
  return out;
}

std::vector<PeriodicPoint> pure_two_cycles(ErrorAngle eps) {
  const HadamardAngles k(eps);
  using poly::Coeffs;
  const Coeffs N{k.s, 0.0, -k.c};
  const Coeffs D{k.c, 0.0, k.s};
  const Coeffs D2 = poly::multiply(D, D);
  const Coeffs N2 = poly::multiply(N, N);
  const Coeffs num = poly::subtract(poly::scale(D2, k.s), poly::scale(N2, k.c));
  const Coeffs den = poly::add(poly::scale(D2, k.c), poly::scale(N2, k.s));
  const Coeffs quintic = poly::subtract(num, poly::multiply({0.0, 1.0}, den));
  const poly::Division div = poly::divide(quintic, {-k.s, k.c, k.c, k.s});
  const Coeffs q = poly::trim(div.quotient, 1e-14);
  if (q.size() != 3) return {};
  const std::vector<Complex> zs = poly::roots(q);
  if (zs.size() != 2) return {};
  Complex z1 = zs[0], z2 = zs[1];
  if (std::abs(z1.imag()) < 1e-12 && std::abs(z2.imag()) < 1e-12) {
    z1.imag(0.0);
    z2.imag(0.0);
  }
  const double lambda = std::abs(f_eps_derivative(z1, eps) * f_eps_derivative(z2, eps));
  BlochVector b1 = z_to_bloch(z1), b2 = z_to_bloch(z2);
  if (b2.w > b1.w || (b2.w == b1.w && b2.v > b1.v)) {
    std::swap(z1, z2);
    std::swap(b1, b2);
  }
  std::vector<PeriodicPoint> out;
  out.push_back(make_pure_point(z1, 2, lambda, PointRole::kC1First, eps));
  out.push_back(make_pure_point(z2, 2, lambda, PointRole::kC1Second, eps));
  return out;
}

std::vector<PeriodicPoint> invariant_plane_fixed_points(ErrorAngle eps) {
  const double ce = std::cos(eps.radians());
  const double se = std::sin(eps.radians());
  const BlochMap f(eps);
  std::vector<BlochVector> found{{0.0, 0.0, 0.0}};
  auto add = [&](BlochVector x) {
    if (x.u * x.u + x.w * x.w > 1.0 + kPureTol) return;
    for (const BlochVector &y : found)
      if (distance(x, y) < kMergeDist) return;
    found.push_back(x);
  };

  if (std::abs(ce) > 1e-12) {
    // Eliminating u from the two fixed-point equations (w != 0 branch):
    //   w (2 + sin e (1 + w^2))^2 = cos e (1 + w^2)^2 (1 + w^2 + 2 sin e),
    // then u = w (2 + sin e (1 + w^2)) / (cos e (1 + w^2)).
    using poly::Coeffs;
    const Coeffs a{2.0 + se, 0.0, se};
    const Coeffs d{1.0, 0.0, 1.0};
    const Coeffs lhs = poly::multiply({0.0, 1.0}, poly::multiply(a, a));
    const Coeffs rhs = poly::scale(poly::multiply(poly::multiply(d, d), {1.0 + 2.0 * se, 0.0, 1.0}), ce);
    for (double w : poly::real_roots(poly::subtract(lhs, rhs), 1e-7)) {
      const double dd = 1.0 + w * w;
      BlochVector x{w * (2.0 + se * dd) / (ce * dd), 0.0, w};
      if (x.u * x.u + x.w * x.w > 1.0 + 1e-6) continue;
      if (auto polished = newton_plane(x, f, eps)) add(*polished);
    }
  }

  constexpr int kSeeds = 32;
  for (int i = 0; i < kSeeds; ++i) {
    for (int j = 0; j < kSeeds; ++j) {
      const BlochVector seed{-1.0 + (i + 0.5) * 2.0 / kSeeds, 0.0, -1.0 + (j + 0.5) * 2.0 / kSeeds};
      if (seed.norm2() > 1.0) continue;
      if (auto x = newton_plane(seed, f, eps)) add(*x);
    }
  }

  std::vector<PeriodicPoint> out;
  for (const BlochVector &x : found) {
    PeriodicPoint p;
    p.location = x;
    p.period = 1;
    p.orbit = {x};
    p.purity = purity(x);
    p.residual = distance(f(x), x);
    const bool origin = x.norm2() == 0.0;
    p.multiplier = origin ? c0_multiplier(eps) : spectral_radius(jacobian(x, eps));
    p.stability = classify_stability(p.multiplier);
    if (origin) {
      p.role = PointRole::kC0;
    } else if (std::abs(p.purity - 1.0) <= kPureTol) {
      p.role = PointRole::kC2;
      p.z = bloch_to_z(x, 1e-7);
    } else if (p.stability == Stability::kRepelling) {
      p.role = PointRole::kC3;
    } else {
      p.role = PointRole::kPlaneFixed;
    }
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const PeriodicPoint &a, const PeriodicPoint &b) {
    return a.purity < b.purity;
  });
  return out;
}

std::optional<PeriodicPoint> mixed_repelling_fixed_point(ErrorAngle eps) {
  std::optional<PeriodicPoint> best;
  for (const PeriodicPoint &p : invariant_plane_fixed_points(eps)) {
    if (p.role != PointRole::kC3) continue;
    if (!best || p.purity > best->purity) best = p;
  }
  return best;
}

double c0_multiplier(ErrorAngle eps) { return 2.0 * std::abs(std::sin(eps.radians())); }

PeriodicPoint detect_long_cycle(const BlochVector &seed, ErrorAngle eps, const CycleSearch &opts) {
  if (opts.max_period < 1 || opts.max_iter <= opts.transient) {
    throw Error(ErrorCode::kInvalidArgument, "cycle search needs max_iter > transient and max_period >= 1");
  }
  const BlochMap f(eps);
  BlochVector x = seed;
  int n = 0;
  for (; n < opts.transient; ++n) x = f(x);

  const int window = 2 * opts.max_period + 3;
  std::vector<BlochVector> tail;
  tail.reserve(window);
  int found_p = 0;
  while (n < opts.max_iter) {
    tail.clear();
    tail.push_back(x);
    while (static_cast<int>(tail.size()) < window && n < opts.max_iter) {
      x = f(x);
      ++n;
      tail.push_back(x);
    }
    const int last = static_cast<int>(tail.size()) - 1;
    for (int p = 1; p <= opts.max_period && p + 2 <= last; ++p) {
      double err = 0.0;
      for (int j = last; j > last - 3; --j) err = std::max(err, distance(tail[j], tail[j - p]));
      if (err < opts.tol) {
        found_p = p;
        break;
      }
    }
    if (found_p) break;
  }
  if (!found_p) throw Error(ErrorCode::kNotFound, "no recurrence within the iteration budget");

  // Keep iterating whole periods while the return distance still improves.
  BlochVector best = x;
  double best_res = orbit_residual(x, found_p, f);
  BlochVector y = x;
  for (int rounds = 0; rounds < 2000 && best_res > 1e-14; ++rounds) {
    for (int k = 0; k < found_p; ++k) y = f(y);
    const double res = orbit_residual(y, found_p, f);
    if (res < best_res) {
      best = y;
      best_res = res;
    } else if (rounds > 20) {
      break;
    }
  }

  PeriodicPoint p;
  p.location = best;
  p.period = found_p;
  p.orbit.push_back(best);
  for (int k = 1; k < found_p; ++k) p.orbit.push_back(f(p.orbit.back()));
  p.residual = best_res;
  p.multiplier = spectral_radius(orbit_jacobian(p.orbit, eps));
  p.stability = classify_stability(p.multiplier);
  p.purity = purity(best);
  p.role = (found_p == 1 && best.norm() < 1e-6) ? PointRole::kC0 : PointRole::kDetected;
  return p;
}

const PeriodicPoint *AttractorInventory::attracting_two_cycle() const {
  for (const PeriodicPoint &p : pure_attractors)
    if (p.role == PointRole::kC1First) return &p;
  return nullptr;
}

AttractorInventory build_inventory(ErrorAngle eps, const InventoryOptions &opts) {
  AttractorInventory inv;
  inv.epsilon = eps;
  inv.pure_fixed = pure_fixed_points(eps);
  inv.pure_cycles = pure_two_cycles(eps);
  for (const PeriodicPoint &p : invariant_plane_fixed_points(eps)) {
    if (p.role == PointRole::kC0) inv.c0_stability = p;
    if (std::abs(p.purity - 1.0) > kPureTol) inv.mixed_fixed_points.push_back(p);
  }
  for (const PeriodicPoint &p : inv.pure_cycles)
    if (p.stability == Stability::kAttracting) inv.pure_attractors.push_back(p);
  for (PeriodicPoint p : inv.pure_fixed) {
    if (p.stability != Stability::kAttracting) continue;
    p.role = PointRole::kSinglePure;
    inv.pure_attractors.push_back(p);
  }

  if (opts.search_long_cycles && inv.c0_stability.stability != Stability::kAttracting) {
    const BlochMap f(eps);
    const int g = opts.seed_grid;
    for (int i = 0; i < g; ++i) {
      for (int j = 0; j < g; ++j) {
        BlochVector x{-1.0 + (i + 0.5) * 2.0 / g, 0.0, -1.0 + (j + 0.5) * 2.0 / g};
        if (x.norm2() > 1.0) continue;
        for (int k = 0; k < opts.cycle.transient; ++k) x = f(x);
        if (purity(x) > 1.0 - 1e-6 || x.norm() < 1e-6) continue;
        PeriodicPoint c;
        try {
          c = detect_long_cycle(x, eps, opts.cycle);
        } catch (const Error &) {
          continue;
        }
        if (c.purity > 1.0 - 1e-6 || c.role == PointRole::kC0) continue;
        bool dup = false;
        const double near = std::max(100.0 * opts.cycle.tol, 0.02);
        for (const PeriodicPoint &e : inv.detected_long_cycles)
          for (const BlochVector &o : e.orbit)
            if (distance(o, c.location) < near) dup = true;
        if (!dup) inv.detected_long_cycles.push_back(c);
      }
    }
  }
  return inv;
}

}  // namespace qchaos
