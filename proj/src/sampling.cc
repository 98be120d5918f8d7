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

#include "spinq/sampling.h"

#include <cmath>
#include <numbers>

namespace spinq {

double BallSampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

BlochVector BallSampler::next_bloch() {
    while (true) {
        BlochVector b{uniform() - 0.5, uniform() - 0.5, uniform() - 0.5};
        if (b.x * b.x + b.y * b.y + b.z * b.z <= 0.25) {
            return b;
        }
    }
}

DensityMatrix BallSampler::next_state() {
    return density_from_bloch(next_bloch());
}

Direction BallSampler::next_direction() {
    double cos_theta = 2 * uniform() - 1;
    double phi = 2 * std::numbers::pi * uniform();
    return {std::acos(cos_theta), phi};
}

}  // namespace spinq
