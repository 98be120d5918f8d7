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

#include "spinq/spin_core.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "golden_values.h"
#include "test_util.h"

using namespace spinq;

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);
const Complex kI{0, 1};

void expect_matrix_eq(const Matrix2 &actual, const Matrix2 &expected, double tol) {
    EXPECT_LE(actual.max_abs_diff(expected), tol);
}

}  // namespace

TEST(spin_core, pauli_matrices) {
    expect_matrix_eq(pauli_matrix(Axis::X), {0, 1, 1, 0}, 0);
    expect_matrix_eq(pauli_matrix(Axis::Y), {0, -kI, kI, 0}, 0);
    expect_matrix_eq(pauli_matrix(Axis::Z), {1, 0, 0, -1}, 0);
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        Matrix2 s = pauli_matrix(a);
        expect_matrix_eq(s, s.adjoint(), 0);
        EXPECT_EQ(s.trace(), Complex(0));
        expect_matrix_eq(s * s, Matrix2::identity(), 0);
        expect_matrix_eq(s * s.adjoint(), Matrix2::identity(), 0);
    }
}

TEST(spin_core, eigenkets) {
    Spinor px = eigenket({Axis::X, 1});
    EXPECT_NEAR(std::abs(px.up - kInvSqrt2), 0, 1e-16);
    EXPECT_NEAR(std::abs(px.down - kInvSqrt2), 0, 1e-16);
    Spinor my = eigenket({Axis::Y, -1});
    EXPECT_NEAR(std::abs(my.up - kInvSqrt2), 0, 1e-16);
    EXPECT_NEAR(std::abs(my.down + kI * kInvSqrt2), 0, 1e-16);
    Spinor pz = eigenket({Axis::Z, 1});
    EXPECT_EQ(pz.up, Complex(1));
    EXPECT_EQ(pz.down, Complex(0));

    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        for (int s : {1, -1}) {
            Spinor v = eigenket({a, s});
            Spinor sv = pauli_matrix(a) * v;
            EXPECT_NEAR(std::abs(sv.up - double(s) * v.up), 0, 1e-15);
            EXPECT_NEAR(std::abs(sv.down - double(s) * v.down), 0, 1e-15);
            EXPECT_NEAR(v.norm2(), 1, 1e-15);
        }
    }
    EXPECT_THROW(AxisSign(Axis::X, 0), std::invalid_argument);
}

TEST(spin_core, overlaps) {
    EXPECT_NEAR(std::abs(overlap({Axis::Z, 1}, {Axis::X, 1}) - kInvSqrt2), 0, 1e-16);
    // <+y| = (1, -i)/sqrt2, so <+y|-z> = -i/sqrt2.
    EXPECT_NEAR(std::abs(overlap({Axis::Y, 1}, {Axis::Z, -1}) + kI * kInvSqrt2), 0, 1e-16);
    EXPECT_EQ(overlap({Axis::Z, 1}, {Axis::Z, -1}), Complex(0));

    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        for (Axis b : {Axis::X, Axis::Y, Axis::Z}) {
            for (int s : {1, -1}) {
                for (int t : {1, -1}) {
                    double p = std::norm(overlap({a, s}, {b, t}));
                    double expected = a != b ? 0.5 : (s == t ? 1.0 : 0.0);
                    EXPECT_NEAR(p, expected, 1e-15);
                }
            }
        }
    }
}

TEST(spin_core, overlap_triple_examples) {
    const Complex plus{0.25, 0.25};
    const Complex minus{0.25, -0.25};
    EXPECT_LE(std::abs(overlap_triple(1, 1, 1, 1) - plus), 1e-15);
    EXPECT_LE(std::abs(overlap_triple(-1, -1, -1, -1) - minus), 1e-15);
    EXPECT_LE(std::abs(overlap_triple(1, 1, 1, -1) - plus), 1e-15);
}

TEST(spin_core, validate_density) {
    EXPECT_TRUE(validate_density({1, 0, 0, 0}).passed());

    ValidationReport trace = validate_density({0.6, 0, 0, 0.6});
    EXPECT_FALSE(trace.passed());
    EXPECT_FALSE(trace.unit_trace());
    EXPECT_NEAR(trace.trace_deviation, 0.2, 1e-15);

    // det = 0.09 - 0.16 < 0; eigenvalues (1 -+ sqrt(1.28)) / 2.
    ValidationReport negative = validate_density({0.9, 0.4, 0.4, 0.1});
    EXPECT_FALSE(negative.passed());
    EXPECT_TRUE(negative.unit_trace());
    EXPECT_TRUE(negative.hermitian());
    EXPECT_FALSE(negative.positive());
    EXPECT_NEAR(negative.determinant, -0.07, 1e-15);
    EXPECT_NEAR(negative.min_eigenvalue, (1 - std::sqrt(1.28)) / 2, 1e-15);

    ValidationReport skew = validate_density({0.5, 0.1, 0.2, 0.5});
    EXPECT_FALSE(skew.hermitian());

    ValidationReport nan = validate_density({std::nan(""), 0, 0, 1});
    EXPECT_FALSE(nan.passed());

    EXPECT_THROW(DensityMatrix(Matrix2{0.6, 0, 0, 0.6}), AdmissibilityError);
    // Tolerance is overridable per call.
    EXPECT_NO_THROW(DensityMatrix(Matrix2{0.5 + 1e-8, 0, 0, 0.5}, 1e-7));
    EXPECT_THROW(DensityMatrix(Matrix2{0.5 + 1e-8, 0, 0, 0.5}), AdmissibilityError);
}

TEST(spin_core, density_from_bloch_examples) {
    expect_matrix_eq(density_from_bloch({0, 0, 0.5}).matrix(), {1, 0, 0, 0}, 1e-16);
    expect_matrix_eq(density_from_bloch({0, 0, 0}).matrix(), {0.5, 0, 0, 0.5}, 1e-16);
    expect_matrix_eq(density_from_bloch({0.5, 0, 0}).matrix(), {0.5, 0.5, 0.5, 0.5}, 1e-16);
    try {
        density_from_bloch({0.6, 0, 0});
        FAIL() << "expected AdmissibilityError";
    } catch (const AdmissibilityError &e) {
        EXPECT_NEAR(e.report().min_eigenvalue, -0.1, 1e-15);
    }
}

TEST(spin_core, bloch_from_density_examples) {
    BlochVector z = bloch_from_density(DensityMatrix({1, 0, 0, 0}));
    EXPECT_DOUBLE_EQ(z.z, 0.5);
    EXPECT_DOUBLE_EQ(z.x, 0);
    BlochVector y = bloch_from_density(DensityMatrix({0.5, -0.5 * kI, 0.5 * kI, 0.5}));
    EXPECT_DOUBLE_EQ(y.x, 0);
    EXPECT_DOUBLE_EQ(y.y, 0.5);
    EXPECT_DOUBLE_EQ(y.z, 0);
    BlochVector o = bloch_from_density(DensityMatrix({0.5, 0, 0, 0.5}));
    EXPECT_EQ(o.norm(), 0);
}

TEST(spin_core, density_from_mean_values) {
    expect_matrix_eq(density_from_mean_values(0, 0, 1).matrix(), {1, 0, 0, 0}, 1e-16);
    expect_matrix_eq(density_from_mean_values(1, 0, 0).matrix(), {0.5, 0.5, 0.5, 0.5}, 1e-16);
    expect_matrix_eq(density_from_mean_values(0, 0, 0).matrix(), {0.5, 0, 0, 0.5}, 1e-16);
    EXPECT_THROW(density_from_mean_values(1, 1, 0), AdmissibilityError);
}

TEST(spin_core, bloch_round_trip_and_purity) {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 1000; t++) {
        DensityMatrix rho = testutil::random_state(rng);
        BlochVector b = bloch_from_density(rho);
        EXPECT_LE(density_from_bloch(b).matrix().max_abs_diff(rho.matrix()), 1e-14);
        double n2 = b.x * b.x + b.y * b.y + b.z * b.z;
        EXPECT_NEAR(rho.purity(), 0.5 + 2 * n2, 1e-12);
    }
    DensityMatrix pure = density_from_bloch({0.3, 0.4, 0});
    EXPECT_NEAR(pure.purity(), 1, 1e-12);
}

TEST(spin_core, triple_overlap_table) {
    for (const auto &row : golden::kTripleOverlaps) {
        EXPECT_LE(std::abs(overlap_triple(row.cx, row.by, row.az, row.az2) - row.value), 1e-15)
            << row.cx << " " << row.by << " " << row.az << " " << row.az2;
    }
}
