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
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qchaos/types.hpp"

namespace qchaos {

enum class BranchMode { kFullTree, kRandomBranch };

/// Both preimages of z under f: +-sqrt((s - c z) / (c + s z)). At a critical
/// value the two coincide.
std::pair<ExtendedComplex, ExtendedComplex> inverse_f(const ExtendedComplex &z, ErrorAngle eps);

/// The two algebraic candidates for a preimage of t, before validation.
/// Index 0 is the principal square root branch, index 1 its negation.
/// A candidate is empty if it is unphysical or fails the round trip.
std::array<std::optional<BlochVector>, 2> inverse_bloch_branches(const BlochVector &t,
                                                                 ErrorAngle eps,
                                                                 double tol = kPhysicalTol);

/// Valid preimages of t (0, 1 or 2). Each returned p satisfies
/// |bloch_step(p) - t| <= 1e-9 and |p| <= 1 + tol.
std::vector<BlochVector> inverse_bloch(const BlochVector &t, ErrorAngle eps,
                                       double tol = kPhysicalTol);

template <class T>
struct PointCloud {
  std::vector<T> points;
  /// Number of inverse steps separating each point from `start`.
  std::vector<int> generation;
  ErrorAngle epsilon;
  int depth = 0;
  std::uint64_t seed = 0;
  BranchMode mode = BranchMode::kFullTree;
  T start{};
};

struct BackwardOptions {
  /// Points of a random walk dropped before recording.
  int transient = 20;
  /// Independent random walks, each of length `depth`.
  int walks = 1;
};

inline constexpr int kMaxTreeDepth = 24;

/// Backward iteration of f from its real repelling fixed point. In full-tree
/// mode `depth` is the tree depth and the 2^depth leaves are returned; in
/// random-branch mode it is the walk length.
PointCloud<ExtendedComplex> julia_cloud(ErrorAngle eps, int depth, BranchMode mode,
                                        std::uint64_t seed, const BackwardOptions &opts = {});

/// Backward iteration of the Bloch map from `start`, pruning invalid branches.
/// Throws DeadEnd if nothing survives to the requested depth.
PointCloud<BlochVector> quasi_julia_cloud(const BlochVector &start, ErrorAngle eps, int depth,
                                          BranchMode mode, std::uint64_t seed,
                                          const BackwardOptions &opts = {});

/// Repeatedly applies the same inverse branch. Stops early if the branch
/// becomes invalid.
std::vector<BlochVector> constant_branch_orbit(const BlochVector &start, ErrorAngle eps,
                                               int branch, int steps);

struct CriticalPurity {
  ErrorAngle epsilon;
  BlochVector c3;
  double p3 = 0.0;
  /// Minimum purity over C3 and its preimages that stay on the v = 0 plane.
  double p_c = 0.0;
  BlochVector argmin;
  int argmin_depth = 0;
  int plane_preimages = 0;
  /// Preimages that leave the plane, reported separately.
  int off_plane_preimages = 0;
  double off_plane_min = 1.0;
  std::optional<BlochVector> off_plane_argmin;
};

/// Lowest purity among C3 and its valid preimage chains up to `depth`.
/// Throws NoC3 when no mixed repelling fixed point exists.
CriticalPurity critical_purity(ErrorAngle eps, int depth = 4);

}  // namespace qchaos
