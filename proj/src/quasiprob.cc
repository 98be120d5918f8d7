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

#include "spinq/quasiprob.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spinq {

namespace {

const Complex kOnePlusI{1, 1};
const Complex kOneMinusI{1, -1};

QuasiProbTable p_from_matrix(const Matrix2 &m) {
    const Complex pp = m(0, 0);
    const Complex pm = m(0, 1);
    const Complex mp = m(1, 0);
    const Complex mm = m(1, 1);
    QuasiProbTable t;
    t.at(1, 1, 1) = 0.25 * kOnePlusI * (pp + pm);
    t.at(-1, 1, 1) = 0.25 * kOneMinusI * (pp - pm);
    t.at(1, -1, 1) = 0.25 * kOneMinusI * (pp + pm);
    t.at(-1, -1, 1) = 0.25 * kOnePlusI * (pp - pm);
    t.at(1, 1, -1) = 0.25 * kOneMinusI * (mm + mp);
    t.at(-1, 1, -1) = 0.25 * kOnePlusI * (mm - mp);
    t.at(1, -1, -1) = 0.25 * kOnePlusI * (mm + mp);
    t.at(-1, -1, -1) = 0.25 * kOneMinusI * (mm - mp);
    return t;
}

int component(const VertexIndex &v, Axis axis) {
    switch (axis) {
        case Axis::X:
            return v.c;
        case Axis::Y:
            return v.b;
        case Axis::Z:
            return v.a;
    }
    throw std::invalid_argument("unknown axis");
}

}  // namespace

VertexIndex QuasiProbTable::vertex(std::size_t k) {
    if (k >= kSize) {
        throw std::out_of_range("vertex index out of range");
    }
    return {(k & 1) ? -1 : 1, (k & 2) ? -1 : 1, (k & 4) ? -1 : 1};
}

std::size_t QuasiProbTable::index(int c, int b, int a) {
    auto bit = [](int s) -> std::size_t {
        if (s == 1) {
            return 0;
        }
        if (s == -1) {
            return 1;
        }
        throw std::invalid_argument("vertex components must be +1 or -1, got " + std::to_string(s));
    };
    return bit(c) | (bit(b) << 1) | (bit(a) << 2);
}

Complex QuasiProbTable::sum() const {
    Complex s = 0;
    for (const auto &e : entries_) {
        s += e;
    }
    return s;
}

double QuasiProbTable::max_abs_diff(const QuasiProbTable &other) const {
    double d = 0;
    for (std::size_t k = 0; k < kSize; k++) {
        d = std::max(d, std::abs(entries_[k] - other.entries_[k]));
    }
    return d;
}

QuasiProbTable QuasiProbTable::operator+(const QuasiProbTable &rhs) const {
    QuasiProbTable out;
    for (std::size_t k = 0; k < kSize; k++) {
        out.entries_[k] = entries_[k] + rhs.entries_[k];
    }
    return out;
}

QuasiProbTable QuasiProbTable::operator*(double scale) const {
    QuasiProbTable out;
    for (std::size_t k = 0; k < kSize; k++) {
        out.entries_[k] = entries_[k] * scale;
    }
    return out;
}

QuasiProbTable p_from_density(const DensityMatrix &rho) {
    return p_from_matrix(rho.matrix());
}

QuasiProbTable p_oracle(const DensityMatrix &rho) {
    QuasiProbTable t;
    for (std::size_t k = 0; k < QuasiProbTable::kSize; k++) {
        VertexIndex v = QuasiProbTable::vertex(k);
        AxisSign cx{Axis::X, v.c};
        AxisSign by{Axis::Y, v.b};
        AxisSign az{Axis::Z, v.a};
        t[k] = overlap(cx, by) * overlap(by, az) * matrix_element(eigenket(az), rho.matrix(), eigenket(cx));
    }
    return t;
}

Matrix2 raw_density_from_p(const QuasiProbTable &t) {
    Complex pp = kOneMinusI * t.at(1, 1, 1) + kOnePlusI * t.at(-1, 1, 1);
    Complex pm = kOneMinusI * t.at(1, 1, 1) - kOnePlusI * t.at(-1, 1, 1);
    return {pp, pm, std::conj(pm), 1.0 - pp};
}

DensityMatrix density_from_p(const QuasiProbTable &t, double tol) {
    Matrix2 m = raw_density_from_p(t);
    ValidationReport r = validate_density(m, tol);
    if (!r.passed()) {
        throw AdmissibilityError("quasiprobability table does not reconstruct a density matrix: " + r.describe(), r);
    }
    return DensityMatrix(m, tol);
}

Complex marginal(const QuasiProbTable &t, Axis axis, int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("marginal sign must be +1 or -1");
    }
    Complex s = 0;
    for (std::size_t k = 0; k < QuasiProbTable::kSize; k++) {
        if (component(QuasiProbTable::vertex(k), axis) == sign) {
            s += t[k];
        }
    }
    return s;
}

bool AdmissibilityReport::marginals_ok() const {
    return std::all_of(marginals.begin(), marginals.end(), [&](const MarginalCheck &m) {
        return std::abs(m.value.imag()) <= tolerance && m.range_violation <= tolerance;
    });
}

std::vector<std::string> AdmissibilityReport::violations() const {
    std::vector<std::string> out;
    auto fmt = [](double x) {
        std::ostringstream s;
        s.precision(17);
        s << x;
        return s.str();
    };
    if (!total_sum_ok()) {
        out.push_back("total sum deviates from 1 by " + fmt(total_sum_deviation));
    }
    for (const auto &m : marginals) {
        std::string label = std::string("marginal ") + axis_name(m.axis) + (m.sign > 0 ? "+" : "-");
        if (std::abs(m.value.imag()) > tolerance) {
            out.push_back(label + " has imaginary part " + fmt(m.value.imag()));
        }
        if (m.range_violation > tolerance) {
            out.push_back(label + " real part outside [0,1] by " + fmt(m.range_violation));
        }
    }
    if (!reconstructed.hermitian()) {
        out.push_back("reconstructed rho not Hermitian (deviation " + fmt(reconstructed.hermiticity_deviation) + ")");
    }
    if (!reconstructed.unit_trace()) {
        out.push_back("reconstructed rho trace deviation " + fmt(reconstructed.trace_deviation));
    }
    if (!reconstructed.positive()) {
        out.push_back("reconstructed rho has negative eigenvalue " + fmt(reconstructed.min_eigenvalue));
    }
    if (!redundancy_ok()) {
        out.push_back("redundant entries disagree with p(1,1,1), p(-1,1,1) by up to " + fmt(max_redundancy_deviation));
    }
    return out;
}

AdmissibilityReport check_admissibility(const QuasiProbTable &t, double tol) {
    AdmissibilityReport r;
    r.tolerance = tol;
    r.total_sum_deviation = std::abs(t.sum() - 1.0);
    for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
        for (int sign : {1, -1}) {
            Complex v = marginal(t, axis, sign);
            double re = v.real();
            r.marginals.push_back({axis, sign, v, std::max({0.0, -re, re - 1.0})});
        }
    }
    Matrix2 m = raw_density_from_p(t);
    r.reconstructed = validate_density(m, tol);
    QuasiProbTable back = p_from_matrix(m);
    for (std::size_t k = 0; k < QuasiProbTable::kSize; k++) {
        r.redundancy_deviation[k] = std::abs(t[k] - back[k]);
        r.max_redundancy_deviation = std::max(r.max_redundancy_deviation, r.redundancy_deviation[k]);
    }
    return r;
}

}  // namespace spinq
