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

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "qchaos/dynamics.hpp"
#include "qchaos/stability.hpp"
#include "qchaos/types.hpp"

namespace qchaos {

enum class BasinKind : std::uint8_t {
  kToC1Even,
  kToC1Odd,
  kToC0,
  kToSinglePure,
  kToMixedCycle,
  kNonConverged,
};

std::string_view to_string(BasinKind k);

/// Basin kind with the 2-cycle parity folded away.
inline BasinKind attractor_of(BasinKind k) {
  return k == BasinKind::kToC1Odd ? BasinKind::kToC1Even : k;
}

inline bool is_pure_basin(BasinKind k) {
  return k == BasinKind::kToC1Even || k == BasinKind::kToC1Odd || k == BasinKind::kToSinglePure;
}

struct ClassificationLabel {
  BasinKind kind = BasinKind::kNonConverged;
  int iterations = 0;

  friend bool operator==(const ClassificationLabel &, const ClassificationLabel &) = default;
};

struct ClassifyParams {
  double radius = 1e-3;
  int max_iter = 200;
};

/// Forward-iterates a state and reports which attractor ball it enters first.
/// EVEN/ODD is the parity of the step at which the orbit first enters the
/// ball around C1_1 (the 2-cycle point with larger w).
class Classifier {
 public:
  /// Map and attractor positions both taken at inv.epsilon.
  Classifier(const AttractorInventory &inv, ClassifyParams params);
  /// Iterate the map at `map_eps` but test against the attractors in `targets`.
  Classifier(ErrorAngle map_eps, const AttractorInventory &targets, ClassifyParams params);
  ~Classifier();
  Classifier(Classifier &&) noexcept;

  ClassificationLabel operator()(const BlochVector &s) const;

  const ClassifyParams &params() const { return params_; }

 private:
  struct Tube;

  BlochMap map_;
  ClassifyParams params_;
  double r2_ = 0.0;
  bool has_c1_ = false;
  BlochVector c1_first_{}, c1_second_{};
  bool c0_attracting_ = false;
  std::vector<BlochVector> singles_;
  std::unique_ptr<Tube> tube_;
};

ClassificationLabel classify(const BlochVector &s, ErrorAngle eps, const AttractorInventory &inv,
                             double r = 1e-3, int max_iter = 200);

struct Surface {
  enum class Kind { kInvariantPlane, kPuritySphere };
  Kind kind = Kind::kInvariantPlane;
  double purity = 1.0;

  static Surface plane() { return {Kind::kInvariantPlane, 1.0}; }
  static Surface sphere(double P) { return {Kind::kPuritySphere, P}; }
};

/// Axis-aligned rectangle. For the plane x is u and y is w; for a sphere
/// these are the stereographic coordinates.
struct Viewport {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
};

struct RenderParams {
  ClassifyParams classify;
  InventoryOptions inventory;
};

struct ClassificationGrid {
  int width = 0;
  int height = 0;
  Viewport viewport;
  Surface surface;
  ErrorAngle epsilon;
  /// Row-major, row 0 at ymax.
  std::vector<ClassificationLabel> labels;
  AttractorInventory attractors;

  const ClassificationLabel &at(int i, int j) const {
    return labels[static_cast<std::size_t>(j) * width + i];
  }
};

/// Pixel center: x = xc + (i + 0.5 - W/2) dx, so a symmetric viewport gives
/// exactly mirrored coordinates.
PlanePoint pixel_center(const Viewport &vp, int width, int height, int i, int j);

/// Throws InvalidViewport for empty or non-finite rectangles, non-positive
/// sizes, or a sphere purity outside (1/2, 1].
void validate_render(const Surface &surface, const Viewport &vp, int width, int height);

/// Points outside the unit disk of the plane get NON_CONVERGED with 0 steps.
ClassificationGrid render(const Surface &surface, const Viewport &vp, int width, int height,
                          const AttractorInventory &inv, const RenderParams &params = {});
ClassificationGrid render(const Surface &surface, const Viewport &vp, int width, int height,
                          ErrorAngle eps, const RenderParams &params = {});
/// Single-threaded reference for tests and benchmarks.
ClassificationGrid render_serial(const Surface &surface, const Viewport &vp, int width,
                                 int height, const AttractorInventory &inv,
                                 const RenderParams &params = {});

/// Uniform sample from the Bloch-ball volume, keyed by (seed, index).
BlochVector sample_ball(std::uint64_t seed, std::uint64_t index);

struct MonteCarloParams {
  std::int64_t n = 1000000;
  /// Attractor ball radius; <= 0 selects 1.25 x the largest displacement of
  /// the attractors between eps and 0 (at least 1e-3).
  double radius = 0.0;
  int max_iter = 1000;
  std::uint64_t seed = 1;
};

struct MonteCarloResult {
  ErrorAngle epsilon;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  double radius = 0.0;
  /// Fraction of samples that end at a different attractor than in the
  /// error-free run. Both parities of the 2-cycle count as the same attractor.
  double delta = 0.0;
  /// Same, but also counting EVEN/ODD swaps.
  double delta_with_parity = 0.0;
  /// Fraction ending in a pure attractor under eps, and under 0.
  double purified_pct = 0.0;
  double purified_pct_reference = 0.0;
  std::int64_t differing = 0;
  std::int64_t differing_with_parity = 0;
};

/// Largest distance between matching attractor points at eps and at 0.
double attractor_displacement(ErrorAngle eps);

MonteCarloResult monte_carlo_divergence(ErrorAngle eps, const MonteCarloParams &params = {});
MonteCarloResult monte_carlo_divergence_serial(ErrorAngle eps, const MonteCarloParams &params = {});

}  // namespace qchaos
