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

#include "qchaos/io.hpp"

#include <charconv>
#include <cmath>

namespace qchaos::io {

Rgb palette(BasinKind kind) {
  switch (kind) {
    case BasinKind::kToC1Even:
      return {135, 206, 250};
    case BasinKind::kToC1Odd:
      return {0, 51, 153};
    case BasinKind::kToC0:
      return {204, 0, 0};
    case BasinKind::kToSinglePure:
      return {0, 128, 128};
    case BasinKind::kToMixedCycle:
      return {255, 153, 0};
    case BasinKind::kNonConverged:
      break;
  }
  return {0, 0, 0};
}

void write_ppm(std::ostream &out, const ClassificationGrid &grid) {
  out << "P6\n" << grid.width << ' ' << grid.height << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(grid.width) * 3);
  for (int j = 0; j < grid.height; ++j) {
    for (int i = 0; i < grid.width; ++i) {
      const Rgb c = palette(grid.at(i, j).kind);
      for (int k = 0; k < 3; ++k) row[3 * i + k] = static_cast<char>(c[k]);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

void write_ppm(std::ostream &out, const BoundaryMask &mask) {
  out << "P6\n" << mask.width << ' ' << mask.height << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(mask.width) * 3);
  for (int j = 0; j < mask.height; ++j) {
    for (int i = 0; i < mask.width; ++i) {
      const char v = mask.at(i, j) ? 0 : static_cast<char>(255);
      row[3 * i] = row[3 * i + 1] = row[3 * i + 2] = v;
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_labels_csv(std::ostream &out, const ClassificationGrid &grid) {
  out << "x_index,y_index,kind,iterations\n";
  for (int j = 0; j < grid.height; ++j)
    for (int i = 0; i < grid.width; ++i) {
      const ClassificationLabel &l = grid.at(i, j);
      out << i << ',' << j << ',' << to_string(l.kind) << ',' << l.iterations << '\n';
    }
}

void write_points_csv(std::ostream &out, const PointCloud<ExtendedComplex> &cloud) {
  out << "x,y\n";
  for (const ExtendedComplex &z : cloud.points) {
    if (z.is_infinite()) {
      out << "inf,inf\n";
    } else {
      out << format_double(z.value().real()) << ',' << format_double(z.value().imag()) << '\n';
    }
  }
}

void write_points_csv(std::ostream &out, const PointCloud<BlochVector> &cloud) {
  out << "u,v,w\n";
  for (const BlochVector &p : cloud.points)
    out << format_double(p.u) << ',' << format_double(p.v) << ',' << format_double(p.w) << '\n';
}

void write_curve_csv(std::ostream &out, const std::vector<ScanPoint> &curve) {
  out << "P,d,stderr,fit_r2\n";
  for (const ScanPoint &p : curve) {
    out << format_double(p.purity) << ',';
    if (p.estimate) {
      out << format_double(p.estimate->d) << ',' << format_double(p.estimate->standard_error) << ','
          << format_double(p.estimate->fit_r2);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace qchaos::io
