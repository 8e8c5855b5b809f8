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

#include "qchaos/basin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "qchaos/error.hpp"
#include "qchaos/rng.hpp"

namespace qchaos {

namespace {

constexpr int kTubeSamples = 4096;
constexpr std::uint64_t kBallStream = 0x62616c6cULL;

double dist2(const BlochVector &a, const BlochVector &b) { return (a - b).norm2(); }

}  // namespace

std::string_view to_string(BasinKind k) {
  switch (k) {
    case BasinKind::kToC1Even:
      return "TO_C1_EVEN";
    case BasinKind::kToC1Odd:
      return "TO_C1_ODD";
    case BasinKind::kToC0:
      return "TO_C0";
    case BasinKind::kToSinglePure:
      return "TO_SINGLE_PURE";
    case BasinKind::kToMixedCycle:
      return "TO_MIXED_CYCLE";
    case BasinKind::kNonConverged:
      return "NON_CONVERGED";
  }
  return "NON_CONVERGED";
}

// Points sampled along detected mixed attractors, bucketed on a cubic grid of
// cell size r so a membership query touches at most 27 cells.
struct Classifier::Tube {
  double cell;
  std::unordered_map<std::int64_t, std::vector<BlochVector>> buckets;

  static std::int64_t key(std::int64_t i, std::int64_t j, std::int64_t k) {
    return (i + (1 << 20)) | ((j + (1 << 20)) << 21) | ((k + (1 << 20)) << 42);
  }
  std::int64_t index(double x) const { return static_cast<std::int64_t>(std::floor(x / cell)); }

  void insert(const BlochVector &p) {
    buckets[key(index(p.u), index(p.v), index(p.w))].push_back(p);
  }

  bool near(const BlochVector &p, double r2) const {
    const std::int64_t i = index(p.u), j = index(p.v), k = index(p.w);
    for (std::int64_t a = i - 1; a <= i + 1; ++a)
      for (std::int64_t b = j - 1; b <= j + 1; ++b)
        for (std::int64_t c = k - 1; c <= k + 1; ++c) {
          const auto it = buckets.find(key(a, b, c));
          if (it == buckets.end()) continue;
          for (const BlochVector &q : it->second)
            if (dist2(p, q) < r2) return true;
        }
    return false;
  }
};

Classifier::Classifier(const AttractorInventory &inv, ClassifyParams params)
    : Classifier(inv.epsilon, inv, params) {}

Classifier::Classifier(ErrorAngle map_eps, const AttractorInventory &targets,
                       ClassifyParams params)
    : map_(map_eps), params_(params), r2_(params.radius * params.radius) {
  if (!(params.radius > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  if (params.max_iter < 0) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 0");
  for (const PeriodicPoint &p : targets.pure_attractors) {
    if (p.role == PointRole::kC1First) {
      has_c1_ = true;
      c1_first_ = p.orbit[0];
      c1_second_ = p.orbit.size() > 1 ? p.orbit[1] : p.orbit[0];
    } else if (p.role == PointRole::kSinglePure) {
      singles_.push_back(p.location);
    }
  }
  c0_attracting_ = targets.c0_stability.stability == Stability::kAttracting;
  if (!targets.detected_long_cycles.empty()) {
    tube_ = std::make_unique<Tube>();
    tube_->cell = params.radius;
    const BlochMap f(targets.epsilon);
    for (const PeriodicPoint &c : targets.detected_long_cycles) {
      BlochVector x = c.location;
      const int n = std::max(c.period, kTubeSamples);
      for (int k = 0; k < n; ++k) {
        tube_->insert(x);
        x = f(x);
      }
    }
  }
}

Classifier::~Classifier() = default;
Classifier::Classifier(Classifier &&) noexcept = default;

ClassificationLabel Classifier::operator()(const BlochVector &s) const {
  BlochVector x = s;
  int second_at = -1;
  for (int n = 0; n <= params_.max_iter; ++n) {
    if (has_c1_) {
      if (dist2(x, c1_first_) < r2_) {
        return {n % 2 == 0 ? BasinKind::kToC1Even : BasinKind::kToC1Odd, n};
      }
      if (second_at < 0 && dist2(x, c1_second_) < r2_) second_at = n;
    }
    if (second_at < 0) {
      if (c0_attracting_ && x.norm2() < r2_) return {BasinKind::kToC0, n};
      for (const BlochVector &p : singles_)
        if (dist2(x, p) < r2_) return {BasinKind::kToSinglePure, n};
      if (tube_ && tube_->near(x, r2_)) return {BasinKind::kToMixedCycle, n};
    }
    if (n == params_.max_iter) break;
    x = map_(x);
  }
  if (second_at >= 0) {
    // Reached C1_2 but ran out of steps before the next visit to C1_1.
    const int n = second_at + 1;
    return {n % 2 == 0 ? BasinKind::kToC1Even : BasinKind::kToC1Odd, n};
  }
  return {BasinKind::kNonConverged, params_.max_iter};
}

ClassificationLabel classify(const BlochVector &s, ErrorAngle eps, const AttractorInventory &inv,
                             double r, int max_iter) {
  return Classifier(eps, inv, {r, max_iter})(s);
}

PlanePoint pixel_center(const Viewport &vp, int width, int height, int i, int j) {
  const double dx = (vp.xmax - vp.xmin) / width;
  const double dy = (vp.ymax - vp.ymin) / height;
  const double xc = 0.5 * (vp.xmin + vp.xmax);
  const double yc = 0.5 * (vp.ymin + vp.ymax);
  return {xc + (i + 0.5 - 0.5 * width) * dx, yc - (j + 0.5 - 0.5 * height) * dy};
}

void validate_render(const Surface &surface, const Viewport &vp, int width, int height) {
  const bool finite = std::isfinite(vp.xmin) && std::isfinite(vp.xmax) && std::isfinite(vp.ymin) &&
                      std::isfinite(vp.ymax);
  if (!finite || !(vp.xmin < vp.xmax) || !(vp.ymin < vp.ymax)) {
    throw Error(ErrorCode::kInvalidViewport, "viewport must be a finite, non-empty rectangle");
  }
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidViewport, "resolution must be positive");
  }
  if (surface.kind == Surface::Kind::kPuritySphere && !(surface.purity > 0.5 && surface.purity <= 1.0)) {
    throw Error(ErrorCode::kInvalidViewport, "sphere purity must lie in (1/2, 1]");
  }
}

namespace {

ClassificationGrid make_grid(const Surface &surface, const Viewport &vp, int width, int height,
                             const AttractorInventory &inv) {
  validate_render(surface, vp, width, height);
  ClassificationGrid g;
  g.width = width;
  g.height = height;
  g.viewport = vp;
  g.surface = surface;
  g.epsilon = inv.epsilon;
  g.attractors = inv;
  g.labels.resize(static_cast<std::size_t>(width) * height);
  return g;
}

inline ClassificationLabel render_pixel(const ClassificationGrid &g, const Classifier &cls, int i,
                                        int j) {
  const PlanePoint p = pixel_center(g.viewport, g.width, g.height, i, j);
  if (g.surface.kind == Surface::Kind::kInvariantPlane) {
    if (p.x * p.x + p.y * p.y > 1.0) return {BasinKind::kNonConverged, 0};
    return cls({p.x, 0.0, p.y});
  }
  return cls(stereographic_unproject(p, g.surface.purity));
}

}  // namespace

ClassificationGrid render(const Surface &surface, const Viewport &vp, int width, int height,
                          const AttractorInventory &inv, const RenderParams &params) {
  ClassificationGrid g = make_grid(surface, vp, width, height, inv);
  const Classifier cls(inv, params.classify);
#pragma omp parallel for schedule(dynamic, 4)
  for (int j = 0; j < height; ++j)
    for (int i = 0; i < width; ++i)
      g.labels[static_cast<std::size_t>(j) * width + i] = render_pixel(g, cls, i, j);
  return g;
}

ClassificationGrid render(const Surface &surface, const Viewport &vp, int width, int height,
                          ErrorAngle eps, const RenderParams &params) {
  validate_render(surface, vp, width, height);
  return render(surface, vp, width, height, build_inventory(eps, params.inventory), params);
}

ClassificationGrid render_serial(const Surface &surface, const Viewport &vp, int width,
                                 int height, const AttractorInventory &inv,
                                 const RenderParams &params) {
  ClassificationGrid g = make_grid(surface, vp, width, height, inv);
  const Classifier cls(inv, params.classify);
  for (int j = 0; j < height; ++j)
    for (int i = 0; i < width; ++i)
      g.labels[static_cast<std::size_t>(j) * width + i] = render_pixel(g, cls, i, j);
  return g;
}

BlochVector sample_ball(std::uint64_t seed, std::uint64_t index) {
  const rng::Counter a = rng::draw(seed, kBallStream, index);
  const rng::Counter b = rng::draw(seed, kBallStream + 1, index);
  const double r = std::cbrt(rng::to_unit(a[0], a[1]));
  const double cos_t = 2.0 * rng::to_unit(a[2], a[3]) - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng::to_unit(b[0], b[1]);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  return {r * sin_t * std::cos(phi), r * sin_t * std::sin(phi), r * cos_t};
}

double attractor_displacement(ErrorAngle eps) {
  const std::vector<PeriodicPoint> at = pure_two_cycles(eps);
  const std::vector<PeriodicPoint> ref = pure_two_cycles(ErrorAngle());
  double d = 0.0;
  for (const PeriodicPoint &a : at)
    for (const PeriodicPoint &b : ref)
      if (a.role == b.role) d = std::max(d, distance(a.location, b.location));
  return d;
}

namespace {

struct McSetup {
  Classifier noisy;
  Classifier clean;
  double radius;
};

McSetup mc_setup(ErrorAngle eps, const MonteCarloParams &p) {
  if (p.n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be at least 1");
  InventoryOptions io;
  io.search_long_cycles = false;
  // Attractor positions of the error-free protocol serve as targets for both runs.
  const AttractorInventory ref = build_inventory(ErrorAngle(), io);
  const double r = p.radius > 0.0 ? p.radius : std::max(1e-3, 1.25 * attractor_displacement(eps));
  return {Classifier(eps, ref, {r, p.max_iter}), Classifier(ErrorAngle(), ref, {r, p.max_iter}), r};
}

MonteCarloResult mc_finish(ErrorAngle eps, const MonteCarloParams &p, double r, std::int64_t diff,
                           std::int64_t diff_parity, std::int64_t pure_noisy,
                           std::int64_t pure_clean) {
  MonteCarloResult res;
  res.epsilon = eps;
  res.n = p.n;
  res.seed = p.seed;
  res.radius = r;
  res.differing = diff;
  res.differing_with_parity = diff_parity;
  res.delta_with_parity = static_cast<double>(diff_parity) / static_cast<double>(p.n);
  res.delta = static_cast<double>(diff) / static_cast<double>(p.n);
  res.purified_pct = static_cast<double>(pure_noisy) / static_cast<double>(p.n);
  res.purified_pct_reference = static_cast<double>(pure_clean) / static_cast<double>(p.n);
  return res;
}

}  // namespace

MonteCarloResult monte_carlo_divergence(ErrorAngle eps, const MonteCarloParams &p) {
  const McSetup s = mc_setup(eps, p);
  std::int64_t diff = 0, diff_parity = 0, pure_noisy = 0, pure_clean = 0;
#pragma omp parallel for schedule(dynamic, 1024) \
    reduction(+ : diff, diff_parity, pure_noisy, pure_clean)
  for (std::int64_t k = 0; k < p.n; ++k) {
    const BlochVector x = sample_ball(p.seed, static_cast<std::uint64_t>(k));
    const BasinKind a = s.noisy(x).kind;
    const BasinKind b = s.clean(x).kind;
    diff += attractor_of(a) != attractor_of(b);
    diff_parity += a != b;
    pure_noisy += is_pure_basin(a);
    pure_clean += is_pure_basin(b);
  }
  return mc_finish(eps, p, s.radius, diff, diff_parity, pure_noisy, pure_clean);
}

MonteCarloResult monte_carlo_divergence_serial(ErrorAngle eps, const MonteCarloParams &p) {
  const McSetup s = mc_setup(eps, p);
  std::int64_t diff = 0, diff_parity = 0, pure_noisy = 0, pure_clean = 0;
  for (std::int64_t k = 0; k < p.n; ++k) {
    const BlochVector x = sample_ball(p.seed, static_cast<std::uint64_t>(k));
    const BasinKind a = s.noisy(x).kind;
    const BasinKind b = s.clean(x).kind;
    diff += attractor_of(a) != attractor_of(b);
    diff_parity += a != b;
    pure_noisy += is_pure_basin(a);
    pure_clean += is_pure_basin(b);
  }
  return mc_finish(eps, p, s.radius, diff, diff_parity, pure_noisy, pure_clean);
}

}  // namespace qchaos
