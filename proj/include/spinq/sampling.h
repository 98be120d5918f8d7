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

#ifndef SPINQ_SAMPLING_H
#define SPINQ_SAMPLING_H

#include <cstdint>
#include <random>

#include "spinq/spin_core.h"
#include "spinq/tomography.h"

namespace spinq {

/// Seeded source of Bloch vectors uniform in the ball of radius 1/2, by
/// rejection from the enclosing cube. Output depends only on the seed.
class BallSampler {
   public:
    explicit BallSampler(std::uint64_t seed) : engine_(seed) {
    }

    /// Uniform in [0, 1) from the top 53 bits of one engine draw.
    double uniform();
    BlochVector next_bloch();
    DensityMatrix next_state();
    /// Uniform on the sphere.
    Direction next_direction();

   private:
    std::mt19937_64 engine_;
};

}  // namespace spinq

#endif
