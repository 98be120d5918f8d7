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

#ifndef SPINQ_RADON_LINK_H
#define SPINQ_RADON_LINK_H

#include <array>

#include "spinq/quasiprob.h"
#include "spinq/tomography.h"

namespace spinq {

/// The affine map from three-axis tomographic probabilities to p(c,b,a), e.g.
///   p(1,1,1) = (1+i)/4 [w+x - i w+y + w+z] - 1/4.
/// Evaluated for any input, physical or not.
QuasiProbTable p_from_w_unchecked(const AxisTriple &t);

/// As p_from_w_unchecked, but throws AdmissibilityError when the triple is not physical.
QuasiProbTable p_from_w(const AxisTriple &t, double tol = kDefaultTolerance);

struct ConsistencyReport {
    AxisTriple triple;
    QuasiProbTable from_w;
    QuasiProbTable from_density;
    std::array<double, QuasiProbTable::kSize> deviation{};
    double max_deviation = 0;
};

/// Compares p_from_w(measure_axes(rho)) with p_from_density(rho).
ConsistencyReport verify_radon_consistency(const DensityMatrix &rho);

}  // namespace spinq

#endif
