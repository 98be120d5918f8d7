// Copyright 2026 The spinq Authors
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

#include "spinq/radon_link.h"

#include <algorithm>
#include <cmath>

namespace spinq {

QuasiProbTable p_from_w_unchecked(const AxisTriple &t) {
    const Complex i{0, 1};
    const Complex one_plus_i{1, 1};
    const Complex one_minus_i{1, -1};
    const double wx = t.wx_plus;
    const double wy = t.wy_plus;
    const double wz = t.wz_plus;
    const double wz_minus = 1 - wz;

    QuasiProbTable p;
    p.at(1, 1, 1) = 0.25 * one_plus_i * (wx - i * wy + wz) - 0.25;
    p.at(-1, 1, 1) = 0.25 * one_minus_i * (-wx + i * wy + wz) - 0.25 * i;
    p.at(1, -1, 1) = 0.25 * one_minus_i * (wx - i * wy + wz) + 0.25 * i;
    p.at(-1, -1, 1) = 0.25 * one_plus_i * (-wx + i * wy + wz) + 0.25;
    p.at(1, 1, -1) = 0.25 * one_minus_i * (wx + i * wy + wz_minus) - 0.25;
    p.at(-1, 1, -1) = 0.25 * one_plus_i * (-wx - i * wy + wz_minus) + 0.25 * i;
    p.at(1, -1, -1) = 0.25 * one_plus_i * (wx + i * wy + wz_minus) - 0.25 * i;
    p.at(-1, -1, -1) = 0.25 * one_minus_i * (-wx - i * wy + wz_minus) + 0.25;
    return p;
}

QuasiProbTable p_from_w(const AxisTriple &t, double tol) {
    ValidationReport r = validate_density(raw_density_from_w_axes(t), tol);
    if (!r.passed()) {
        throw AdmissibilityError("axis tomogram is not physical: " + r.describe(), r);
    }
    return p_from_w_unchecked(t);
}

ConsistencyReport verify_radon_consistency(const DensityMatrix &rho) {
    ConsistencyReport r;
    r.triple = measure_axes(rho);
    r.from_w = p_from_w_unchecked(r.triple);
    r.from_density = p_from_density(rho);
    for (std::size_t k = 0; k < QuasiProbTable::kSize; k++) {
        r.deviation[k] = std::abs(r.from_w[k] - r.from_density[k]);
        r.max_deviation = std::max(r.max_deviation, r.deviation[k]);
    }
    return r;
}

}  // namespace spinq
