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

#include "gtest/gtest.h"

using namespace spinq;

TEST(sampling, deterministic_per_seed) {
    BallSampler a(12), b(12), c(13);
    bool differs = false;
    for (int k = 0; k < 100; k++) {
        BlochVector x = a.next_bloch();
        BlochVector y = b.next_bloch();
        BlochVector z = c.next_bloch();
        EXPECT_EQ(x.x, y.x);
        EXPECT_EQ(x.y, y.y);
        EXPECT_EQ(x.z, y.z);
        differs = differs || x.x != z.x;
    }
    EXPECT_TRUE(differs);
}

TEST(sampling, stays_in_ball_and_covers_it) {
    BallSampler s(99);
    int inner = 0;
    double mean_z = 0;
    const int n = 20000;
    for (int k = 0; k < n; k++) {
        BlochVector b = s.next_bloch();
        EXPECT_LE(b.norm(), 0.5);
        inner += b.norm() < 0.25;
        mean_z += b.z;
    }
    // Uniform in the ball puts 1/8 of the samples inside half the radius.
    EXPECT_NEAR(inner / double(n), 0.125, 0.01);
    EXPECT_NEAR(mean_z / n, 0, 0.01);
}

TEST(sampling, uniform_and_directions) {
    BallSampler s(5);
    for (int k = 0; k < 1000; k++) {
        double u = s.uniform();
        EXPECT_GE(u, 0);
        EXPECT_LT(u, 1);
        Direction d = s.next_direction();
        EXPECT_GE(d.theta, 0);
        EXPECT_LE(d.theta, 3.141592653589793);
        EXPECT_NO_THROW(s.next_state());
    }
}
