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

#include "qchaos/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qchaos/error.hpp"

namespace qchaos {

namespace {

bool separates(const ClassificationLabel &a, const ClassificationLabel &b, BoundaryPolicy policy) {
  if (a.kind == b.kind) return false;
  if (is_pure_basin(a.kind) && is_pure_basin(b.kind)) return true;
  if (!policy.include_c0) return false;
  // Out-of-domain pixels of a plane render never form a boundary.
  const auto outside = [](const ClassificationLabel &l) {
    return l.kind == BasinKind::kNonConverged && l.iterations == 0;
  };
  return !outside(a) && !outside(b);
}

}  // namespace

std::size_t BoundaryMask::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

BoundaryMask extract_boundary(const std::vector<ClassificationLabel> &labels, int width,
                              int height, BoundaryPolicy policy) {
  BoundaryMask m(width, height);
  auto at = [&](int i, int j) -> const ClassificationLabel & {
    return labels[static_cast<std::size_t>(j) * width + i];
  };
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) {
      const ClassificationLabel &c = at(i, j);
      const bool edge = (i > 0 && separates(c, at(i - 1, j), policy)) ||
                        (i + 1 < width && separates(c, at(i + 1, j), policy)) ||
                        (j > 0 && separates(c, at(i, j - 1), policy)) ||
                        (j + 1 < height && separates(c, at(i, j + 1), policy));
      if (edge) m.set(i, j);
    }
  }
  return m;
}

BoundaryMask extract_boundary(const ClassificationGrid &grid, BoundaryPolicy policy) {
  return extract_boundary(grid.labels, grid.width, grid.height, policy);
}

namespace {

double count_boxes(const BoundaryMask &mask, int size, int ox, int oy) {
  // Box index of pixel i is floor((i + ox) / size).
  const int nx = (mask.width + ox + size - 1) / size;
  const int ny = (mask.height + oy + size - 1) / size;
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(nx) * ny, 0);
  for (int j = 0; j < mask.height; ++j) {
    const int by = (j + oy) / size;
    for (int i = 0; i < mask.width; ++i)
      if (mask.at(i, j)) occ[static_cast<std::size_t>(by) * nx + (i + ox) / size] = 1;
  }
  return static_cast<double>(std::count(occ.begin(), occ.end(), std::uint8_t{1}));
}

}  // namespace

DimensionEstimate box_count_dimension(const BoundaryMask &mask, const std::vector<int> &sizes,
                                      bool offset_average) {
  if (mask.count() == 0) throw Error(ErrorCode::kEmptyMask, "boundary mask is empty");
  if (sizes.size() < 4) throw Error(ErrorCode::kInvalidArgument, "box counting needs at least 4 sizes");
  std::vector<int> sz = sizes;
  std::sort(sz.begin(), sz.end());
  if (sz.front() < 1 || std::adjacent_find(sz.begin(), sz.end()) != sz.end()) {
    throw Error(ErrorCode::kInvalidArgument, "box sizes must be distinct positive integers");
  }

  DimensionEstimate e;
  e.box_sizes = sz;
  for (int s : sz) {
    double n = count_boxes(mask, s, 0, 0);
    if (offset_average && s > 1) {
      const int h = s / 2;
      n = 0.25 * (n + count_boxes(mask, s, h, 0) + count_boxes(mask, s, 0, h) +
                  count_boxes(mask, s, h, h));
    }
    e.counts.push_back(n);
  }

  const std::size_t k = sz.size();
  std::vector<double> x(k), y(k);
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = -std::log(static_cast<double>(sz[i]));
    y[i] = std::log(e.counts[i]);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / k;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  e.d = sxy / sxx;
  const double sse = std::max(0.0, syy - e.d * sxy);
  e.standard_error = std::sqrt(sse / static_cast<double>(k - 2) / sxx);
  e.fit_r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return e;
}

BoundaryMask diagonal_line_mask(int n) {
  BoundaryMask m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BoundaryMask filled_disk_mask(int n) {
  BoundaryMask m(n, n);
  const double c = 0.5 * n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double dx = i + 0.5 - c, dy = j + 0.5 - c;
      if (dx * dx + dy * dy <= c * c) m.set(i, j);
    }
  return m;
}

BoundaryMask sierpinski_carpet_mask(int depth, int cell) {
  int n = 1;
  for (int k = 0; k < depth; ++k) n *= 3;
  BoundaryMask m(n * cell, n * cell);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      bool filled = true;
      for (int a = i, b = j; a > 0 || b > 0; a /= 3, b /= 3)
        if (a % 3 == 1 && b % 3 == 1) filled = false;
      if (!filled) continue;
      for (int y = 0; y < cell; ++y)
        for (int x = 0; x < cell; ++x) m.set(i * cell + x, j * cell + y);
    }
  }
  return m;
}

std::vector<ScanPoint> dimension_vs_purity(const AttractorInventory &inv,
                                           const std::vector<double> &purities,
                                           const ScanParams &params) {
  std::vector<ScanPoint> out;
  for (double P : purities) {
    if (!(P > 0.5 && P <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "purity must lie in (1/2, 1]");
    RenderParams rp;
    rp.classify = params.classify;
    const ClassificationGrid g = render(Surface::sphere(P), params.viewport, params.resolution,
                                        params.resolution, inv, rp);
    const BoundaryMask mask = extract_boundary(g, params.policy);
    ScanPoint sp;
    sp.purity = P;
    sp.boundary_pixels = mask.count();
    if (sp.boundary_pixels > 0) sp.estimate = box_count_dimension(mask, params.box_sizes, params.offset_average);
    out.push_back(std::move(sp));
  }
  return out;
}

std::vector<ScanPoint> dimension_vs_purity(ErrorAngle eps, const std::vector<double> &purities,
                                           const ScanParams &params) {
  return dimension_vs_purity(build_inventory(eps), purities, params);
}

CriticalPurityEstimate estimate_critical_purity_from_scan(const std::vector<ScanPoint> &curve) {
  if (curve.size() < 2) throw Error(ErrorCode::kNoTransition, "scan has fewer than two samples");
  std::vector<ScanPoint> c = curve;
  std::sort(c.begin(), c.end(), [](const ScanPoint &a, const ScanPoint &b) { return a.purity > b.purity; });
  const std::size_t top = std::min(c.size(), std::max<std::size_t>(3, c.size() / 4));
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < top; ++i)
    if (c[i].estimate) {
      sum += c[i].estimate->d;
      ++used;
    }
  if (used == 0) throw Error(ErrorCode::kNoTransition, "no fractal plateau at the top of the scan");
  CriticalPurityEstimate r;
  r.plateau = sum / static_cast<double>(used);
  if (r.plateau <= 1.0) throw Error(ErrorCode::kNoTransition, "plateau is not above dimension 1");
  r.threshold = 1.0 + 0.5 * (r.plateau - 1.0);
  double step = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const double gap = c[i].purity - c[i + 1].purity;
    if (step == 0.0 || gap < step) step = gap;
  }
  r.uncertainty = step;
  for (const ScanPoint &p : c) {
    if (!p.estimate || p.estimate->d < r.threshold) {
      r.p_c_est = p.purity;
      return r;
    }
  }
  throw Error(ErrorCode::kNoTransition, "dimension never falls below the threshold");
}

std::vector<double> purity_grid(double from, double to, double step) {
  if (!(step > 0.0) || !(to >= from)) throw Error(ErrorCode::kInvalidArgument, "bad purity grid");
  std::vector<double> g;
  const long n = static_cast<long>(std::floor((to - from) / step + 1e-3));
  for (long k = 0; k <= n; ++k) g.push_back(from + static_cast<double>(k) * step);
  return g;
}

}  // namespace qchaos
