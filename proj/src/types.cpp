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

#include <cmath>

#include "qchaos/error.hpp"
#include "qchaos/types.hpp"

namespace qchaos {

ExtendedComplex::ExtendedComplex(Complex z) {
  if (std::isnan(z.real()) || std::isnan(z.imag())) {
    throw Error(ErrorCode::kInvalidArgument, "NaN is not a point of the Riemann sphere");
  }
  if (std::isinf(z.real()) || std::isinf(z.imag())) {
    infinite_ = true;
  } else {
    z_ = z;
  }
}

double chordal_distance(const ExtendedComplex &a, const ExtendedComplex &b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  const Complex za = a.value();
  const Complex zb = b.value();
  return 2.0 * std::abs(za - zb) / std::sqrt((1.0 + std::norm(za)) * (1.0 + std::norm(zb)));
}

std::string_view to_string(AngleUnit unit) {
  switch (unit) {
    case AngleUnit::kDegrees:
      return "deg";
    case AngleUnit::kPercent:
      return "pct";
    case AngleUnit::kRadians:
      return "rad";
  }
  return "rad";
}

}  // namespace qchaos
