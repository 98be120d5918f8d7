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

#include "spinq/tomography.h"

#include <cmath>
#include <numbers>

namespace spinq {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

}  // namespace

double wrap_angle(double radians) {
    double r = std::fmod(radians, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    // fmod of a value just below a multiple of 2*pi can round up to 2*pi.
    if (r >= kTwoPi) {
        r = 0;
    }
    return r;
}

EulerAngles EulerAngles::normalized() const {
    double t = wrap_angle(theta);
    double f = phi;
    double s = psi;
    if (t > std::numbers::pi) {
        t = kTwoPi - t;
        f += std::numbers::pi;
        s += std::numbers::pi;
    }
    return {wrap_angle(f), t, wrap_angle(s)};
}

Direction Direction::normalized() const {
    EulerAngles e = EulerAngles{phi, theta, 0}.normalized();
    return {e.theta, e.phi};
}

std::array<double, 3> Direction::unit_vector() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Direction axis_direction(Axis axis) {
    switch (axis) {
        case Axis::X:
            return {std::numbers::pi / 2, 0};
        case Axis::Y:
            return {std::numbers::pi / 2, std::numbers::pi / 2};
        case Axis::Z:
            return {0, 0};
    }
    throw std::invalid_argument("unknown axis");
}

double AxisTriple::polarization2() const {
    double x = 2 * wx_plus - 1;
    double y = 2 * wy_plus - 1;
    double z = 2 * wz_plus - 1;
    return x * x + y * y + z * z;
}

Matrix2 rotation_matrix(const EulerAngles &angles) {
    EulerAngles u = angles.normalized();
    double c = std::cos(u.theta / 2);
    double s = std::sin(u.theta / 2);
    Complex sum_phase = std::polar(1.0, (u.phi + u.psi) / 2);
    Complex diff_phase = std::polar(1.0, (u.phi - u.psi) / 2);
    return {c * sum_phase, s * std::conj(diff_phase), -s * diff_phase, c * std::conj(sum_phase)};
}

DensityMatrix rotate_density(const DensityMatrix &rho, const EulerAngles &u, double tol) {
    Matrix2 d = rotation_matrix(u);
    return DensityMatrix(d * rho.matrix() * d.adjoint(), tol);
}

Tomogram w_value(const DensityMatrix &rho, const EulerAngles &u) {
    Matrix2 d = rotation_matrix(u);
    Matrix2 r = d * rho.matrix() * d.adjoint();
    EulerAngles n = u.normalized();
    return {r(0, 0).real(), r(1, 1).real(), {n.theta, n.phi}};
}

Tomogram w_value(const DensityMatrix &rho, const Direction &d) {
    return w_value(rho, d.euler());
}

Tomogram w_from_bloch(const BlochVector &b, const Direction &d, double tol) {
    // Rejects |b| > 1/2 with the same report density_from_bloch produces.
    (void)density_from_bloch(b, tol);
    Direction n = d.normalized();
    auto u = n.unit_vector();
    double proj = b.x * u[0] + b.y * u[1] + b.z * u[2];
    return {0.5 + proj, 0.5 - proj, n};
}

double mean_from_w(const Tomogram &t) {
    return 2 * t.w_plus - 1;
}

AxisTriple measure_axes(const DensityMatrix &rho) {
    return {
        w_value(rho, axis_direction(Axis::X)).w_plus,
        w_value(rho, axis_direction(Axis::Y)).w_plus,
        w_value(rho, axis_direction(Axis::Z)).w_plus,
    };
}

Matrix2 raw_density_from_w_axes(const AxisTriple &t) {
    Complex off{t.wx_plus - 0.5, -(t.wy_plus - 0.5)};
    return {t.wz_plus, off, std::conj(off), 1.0 - t.wz_plus};
}

DensityMatrix density_from_w_axes(const AxisTriple &t, double tol) {
    Matrix2 m = raw_density_from_w_axes(t);
    ValidationReport r = validate_density(m, tol);
    if (!r.passed()) {
        throw AdmissibilityError("axis tomogram is not physical: " + r.describe(), r);
    }
    return DensityMatrix(m, tol);
}

}  // namespace spinq
