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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spinq {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kI{0, 1};

}  // namespace

char axis_name(Axis axis) {
    switch (axis) {
        case Axis::X:
            return 'x';
        case Axis::Y:
            return 'y';
        case Axis::Z:
            return 'z';
    }
    throw std::invalid_argument("unknown axis");
}

AxisSign::AxisSign(Axis axis, int sign) : axis(axis), sign(sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("axis sign must be +1 or -1, got " + std::to_string(sign));
    }
}

Matrix2 Matrix2::adjoint() const {
    return {std::conj(e_[0][0]), std::conj(e_[1][0]), std::conj(e_[0][1]), std::conj(e_[1][1])};
}

Complex Matrix2::trace() const {
    return e_[0][0] + e_[1][1];
}

Complex Matrix2::det() const {
    return e_[0][0] * e_[1][1] - e_[0][1] * e_[1][0];
}

double Matrix2::max_abs_diff(const Matrix2 &other) const {
    double d = 0;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            d = std::max(d, std::abs(e_[r][c] - other.e_[r][c]));
        }
    }
    return d;
}

Matrix2 Matrix2::operator*(const Matrix2 &rhs) const {
    Matrix2 out;
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            out.e_[r][c] = e_[r][0] * rhs.e_[0][c] + e_[r][1] * rhs.e_[1][c];
        }
    }
    return out;
}

Matrix2 Matrix2::operator+(const Matrix2 &rhs) const {
    return {e_[0][0] + rhs.e_[0][0], e_[0][1] + rhs.e_[0][1], e_[1][0] + rhs.e_[1][0], e_[1][1] + rhs.e_[1][1]};
}

Matrix2 Matrix2::operator-(const Matrix2 &rhs) const {
    return {e_[0][0] - rhs.e_[0][0], e_[0][1] - rhs.e_[0][1], e_[1][0] - rhs.e_[1][0], e_[1][1] - rhs.e_[1][1]};
}

Matrix2 Matrix2::operator*(Complex scale) const {
    return {e_[0][0] * scale, e_[0][1] * scale, e_[1][0] * scale, e_[1][1] * scale};
}

Spinor Matrix2::operator*(const Spinor &v) const {
    return {e_[0][0] * v.up + e_[0][1] * v.down, e_[1][0] * v.up + e_[1][1] * v.down};
}

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

std::string ValidationReport::describe() const {
    std::ostringstream out;
    out.precision(17);
    out << "hermiticity deviation " << hermiticity_deviation << (hermitian() ? " (ok)" : " (FAIL)")
        << "; trace deviation " << trace_deviation << (unit_trace() ? " (ok)" : " (FAIL)") << "; min eigenvalue "
        << min_eigenvalue << (positive() ? " (ok)" : " (FAIL)") << "; tol " << tolerance;
    return out.str();
}

ValidationReport validate_density(const Matrix2 &m, double tol) {
    ValidationReport r;
    r.tolerance = tol;
    r.hermiticity_deviation = std::max(
        {std::abs(m(0, 1) - std::conj(m(1, 0))), std::abs(m(0, 0).imag()), std::abs(m(1, 1).imag())});
    r.trace_deviation = std::abs(m.trace() - 1.0);

    // Eigenvalues of the Hermitian part: t/2 -+ sqrt(((a-d)/2)^2 + |b|^2).
    double a = m(0, 0).real();
    double d = m(1, 1).real();
    Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
    r.determinant = a * d - std::norm(b);
    double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
    r.min_eigenvalue = 0.5 * (a + d) - half_gap;
    if (!std::isfinite(r.hermiticity_deviation) || !std::isfinite(r.trace_deviation) ||
        !std::isfinite(r.min_eigenvalue)) {
        r.hermiticity_deviation = std::numeric_limits<double>::infinity();
    }
    return r;
}

DensityMatrix::DensityMatrix(const Matrix2 &m, double tol) : m_(m) {
    ValidationReport r = validate_density(m, tol);
    if (!r.passed()) {
        throw AdmissibilityError("not a valid density matrix: " + r.describe(), r);
    }
}

double DensityMatrix::purity() const {
    return (m_ * m_).trace().real();
}

Matrix2 pauli_matrix(Axis axis) {
    switch (axis) {
        case Axis::X:
            return {0, 1, 1, 0};
        case Axis::Y:
            return {0, -kI, kI, 0};
        case Axis::Z:
            return {1, 0, 0, -1};
    }
    throw std::invalid_argument("unknown axis");
}

Spinor eigenket(AxisSign a) {
    double s = a.sign;
    switch (a.axis) {
        case Axis::X:
            return {kInvSqrt2, s * kInvSqrt2};
        case Axis::Y:
            return {kInvSqrt2, s * kI * kInvSqrt2};
        case Axis::Z:
            return a.sign > 0 ? Spinor{1, 0} : Spinor{0, 1};
    }
    throw std::invalid_argument("unknown axis");
}

Complex overlap(AxisSign a, AxisSign b) {
    Spinor u = eigenket(a);
    Spinor v = eigenket(b);
    return std::conj(u.up) * v.up + std::conj(u.down) * v.down;
}

Complex overlap_triple(int cx, int by, int az, int az2) {
    return overlap({Axis::X, cx}, {Axis::Y, by}) * overlap({Axis::Y, by}, {Axis::Z, az}) *
           overlap({Axis::Z, az2}, {Axis::X, cx});
}

Complex matrix_element(const Spinor &u, const Matrix2 &m, const Spinor &v) {
    Spinor mv = m * v;
    return std::conj(u.up) * mv.up + std::conj(u.down) * mv.down;
}

DensityMatrix density_from_bloch(const BlochVector &b, double tol) {
    Matrix2 m = Matrix2::identity() * 0.5 + pauli_matrix(Axis::X) * b.x + pauli_matrix(Axis::Y) * b.y +
                pauli_matrix(Axis::Z) * b.z;
    ValidationReport r = validate_density(m, tol);
    if (!r.passed()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "Bloch vector norm " << b.norm() << " exceeds 1/2";
        throw AdmissibilityError(msg.str(), r);
    }
    return DensityMatrix(m, tol);
}

BlochVector bloch_from_density(const DensityMatrix &rho) {
    const Matrix2 &m = rho.matrix();
    return {
        0.5 * (m * pauli_matrix(Axis::X)).trace().real(),
        0.5 * (m * pauli_matrix(Axis::Y)).trace().real(),
        0.5 * (m * pauli_matrix(Axis::Z)).trace().real(),
    };
}

DensityMatrix density_from_mean_values(double mx, double my, double mz, double tol) {
    return density_from_bloch({0.5 * mx, 0.5 * my, 0.5 * mz}, tol);
}

}  // namespace spinq
