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

#include "qchaos/julia.hpp"

#include <algorithm>
#include <cmath>

#include "qchaos/dynamics.hpp"
#include "qchaos/error.hpp"
#include "qchaos/rng.hpp"
#include "qchaos/stability.hpp"

namespace qchaos {

namespace {

constexpr double kRoundTrip = 1e-9;
constexpr double kPlaneTol = 1e-9;
constexpr std::uint64_t kBranchStream = 0x6a756c6961ULL;

void check_depth(int depth, BranchMode mode) {
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "depth must be at least 1");
  if (mode == BranchMode::kFullTree && depth > kMaxTreeDepth) {
    throw Error(ErrorCode::kDepthTooLarge, "full tree depth is limited to 24");
  }
}

bool branch_bit(std::uint64_t seed, int walk, int step) {
  return rng::draw(seed, kBranchStream + static_cast<std::uint64_t>(walk),
                   static_cast<std::uint64_t>(step))[0] & 1u;
}

}  // namespace

std::pair<ExtendedComplex, ExtendedComplex> inverse_f(const ExtendedComplex &z, ErrorAngle eps) {
  const HadamardAngles k(eps);
  Complex a = 1.0, b = 0.0;
  if (z.is_finite()) {
    a = z.value();
    b = 1.0;
  }
  const Complex num = k.s * b - k.c * a;
  const Complex den = k.c * b + k.s * a;
  if (std::abs(den) == 0.0 || std::abs(den) <= 1e-300 * std::abs(num)) {
    return {ExtendedComplex::infinity(), ExtendedComplex::infinity()};
  }
  const Complex r = std::sqrt(num / den);
  if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
    return {ExtendedComplex::infinity(), ExtendedComplex::infinity()};
  }
  return {ExtendedComplex(r), ExtendedComplex(-r)};
}

std::array<std::optional<BlochVector>, 2> inverse_bloch_branches(const BlochVector &t,
                                                                 ErrorAngle eps, double tol) {
  const double ce = std::cos(eps.radians());
  const double se = std::sin(eps.radians());
  const BlochMap f(eps);
  std::array<std::optional<BlochVector>, 2> out;
  auto accept = [&](const BlochVector &p) -> std::optional<BlochVector> {
    if (!is_physical(p, tol)) return std::nullopt;
    if (distance(f(p), t) > kRoundTrip) return std::nullopt;
    return p;
  };

  const double A = 1.0 - t.u * ce + t.w * se;
  const double B = 1.0 + t.u * ce - t.w * se;
  if (B < 1e-15) {
    // The ratio blows up: the only candidate is the south pole.
    out[0] = accept({0.0, 0.0, -1.0});
    return out;
  }
  const double s = std::sqrt(std::max(A, 0.0) / B);
  const double w = (1.0 - s) / (1.0 + s);
  const Complex q = std::sqrt((1.0 + w * w) * Complex(t.u * se + t.w * ce, t.v));
  // q = u - i v
  out[0] = accept({q.real(), -q.imag(), w});
  if (q != Complex(0.0, 0.0)) out[1] = accept({-q.real(), q.imag(), w});
  return out;
}

std::vector<BlochVector> inverse_bloch(const BlochVector &t, ErrorAngle eps, double tol) {
  std::vector<BlochVector> out;
  for (const auto &c : inverse_bloch_branches(t, eps, tol))
    if (c) out.push_back(*c);
  return out;
}

PointCloud<ExtendedComplex> julia_cloud(ErrorAngle eps, int depth, BranchMode mode,
                                        std::uint64_t seed, const BackwardOptions &opts) {
  check_depth(depth, mode);
  PointCloud<ExtendedComplex> cloud;
  cloud.epsilon = eps;
  cloud.depth = depth;
  cloud.seed = seed;
  cloud.mode = mode;
  cloud.start = *pure_fixed_points(eps).front().z;

  if (mode == BranchMode::kFullTree) {
    std::vector<ExtendedComplex> level{cloud.start};
    for (int d = 0; d < depth; ++d) {
      std::vector<ExtendedComplex> next;
      next.reserve(level.size() * 2);
      for (const ExtendedComplex &z : level) {
        const auto [a, b] = inverse_f(z, eps);
        next.push_back(a);
        next.push_back(b);
      }
      level = std::move(next);
    }
    cloud.points = std::move(level);
    cloud.generation.assign(cloud.points.size(), depth);
    return cloud;
  }

  const int walks = std::max(1, opts.walks);
  const int keep = std::max(0, depth - opts.transient);
  cloud.points.resize(static_cast<std::size_t>(walks) * keep);
  cloud.generation.resize(cloud.points.size());
#pragma omp parallel for schedule(static)
  for (int wk = 0; wk < walks; ++wk) {
    ExtendedComplex z = cloud.start;
    std::size_t slot = static_cast<std::size_t>(wk) * keep;
    for (int step = 1; step <= depth; ++step) {
      const auto [a, b] = inverse_f(z, eps);
      z = branch_bit(seed, wk, step) ? b : a;
      if (step > opts.transient) {
        cloud.points[slot] = z;
        cloud.generation[slot] = step;
        ++slot;
      }
    }
  }
  return cloud;
}

PointCloud<BlochVector> quasi_julia_cloud(const BlochVector &start, ErrorAngle eps, int depth,
                                          BranchMode mode, std::uint64_t seed,
                                          const BackwardOptions &opts) {
  check_depth(depth, mode);
  PointCloud<BlochVector> cloud;
  cloud.epsilon = eps;
  cloud.depth = depth;
  cloud.seed = seed;
  cloud.mode = mode;
  cloud.start = start;

  if (mode == BranchMode::kFullTree) {
    std::vector<BlochVector> level{start};
    for (int d = 0; d < depth; ++d) {
      std::vector<BlochVector> next;
      for (const BlochVector &t : level)
        for (const BlochVector &p : inverse_bloch(t, eps)) next.push_back(p);
      if (next.empty()) {
        throw Error(ErrorCode::kDeadEnd, "every branch was pruned at depth " + std::to_string(d + 1));
      }
      level = std::move(next);
    }
    cloud.points = std::move(level);
    cloud.generation.assign(cloud.points.size(), depth);
    return cloud;
  }

  const int walks = std::max(1, opts.walks);
  std::vector<std::vector<BlochVector>> per_walk(walks);
  std::vector<std::vector<int>> per_gen(walks);
  std::vector<char> completed(walks, 0);
#pragma omp parallel for schedule(static)
  for (int wk = 0; wk < walks; ++wk) {
    BlochVector x = start;
    int step = 1;
    for (; step <= depth; ++step) {
      const std::vector<BlochVector> pre = inverse_bloch(x, eps);
      if (pre.empty()) break;
      x = pre.size() == 1 ? pre[0] : pre[branch_bit(seed, wk, step) ? 1 : 0];
      if (step > opts.transient) {
        per_walk[wk].push_back(x);
        per_gen[wk].push_back(step);
      }
    }
    completed[wk] = step > depth;
  }
  if (std::none_of(completed.begin(), completed.end(), [](char c) { return c != 0; })) {
    throw Error(ErrorCode::kDeadEnd, "every random walk ran out of valid preimages");
  }
  for (int wk = 0; wk < walks; ++wk) {
    cloud.points.insert(cloud.points.end(), per_walk[wk].begin(), per_walk[wk].end());
    cloud.generation.insert(cloud.generation.end(), per_gen[wk].begin(), per_gen[wk].end());
  }
  return cloud;
}

std::vector<BlochVector> constant_branch_orbit(const BlochVector &start, ErrorAngle eps,
                                               int branch, int steps) {
  if (branch != 0 && branch != 1) throw Error(ErrorCode::kInvalidArgument, "branch must be 0 or 1");
  std::vector<BlochVector> orbit{start};
  for (int k = 0; k < steps; ++k) {
    const auto c = inverse_bloch_branches(orbit.back(), eps)[branch];
    if (!c) break;
    orbit.push_back(*c);
  }
  return orbit;
}

CriticalPurity critical_purity(ErrorAngle eps, int depth) {
  const auto c3 = mixed_repelling_fixed_point(eps);
  if (!c3) throw Error(ErrorCode::kNoC3, "no mixed repelling fixed point at this error angle");
  CriticalPurity r;
  r.epsilon = eps;
  r.c3 = c3->location;
  r.p3 = c3->purity;
  r.p_c = r.p3;
  r.argmin = r.c3;

  // Breadth-first over the preimage tree. Nodes that leave the plane are
  // tallied and followed, but kept out of the plane minimum.
  struct Node {
    BlochVector x;
    bool on_plane;
  };
  std::vector<Node> level{{r.c3, true}};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Node> next;
    for (const Node &n : level) {
      for (const BlochVector &p : inverse_bloch(n.x, eps)) {
        const bool plane = n.on_plane && std::abs(p.v) <= kPlaneTol;
        const double pp = purity(p);
        if (plane) {
          ++r.plane_preimages;
          if (pp < r.p_c) {
            r.p_c = pp;
            r.argmin = p;
            r.argmin_depth = d;
          }
        } else {
          ++r.off_plane_preimages;
          if (pp < r.off_plane_min) {
            r.off_plane_min = pp;
            r.off_plane_argmin = p;
          }
        }
        next.push_back({p, plane});
      }
    }
    level = std::move(next);
  }
  return r;
}

}  // namespace qchaos
