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

#ifndef SPINQ_SPIN_CORE_H
#define SPINQ_SPIN_CORE_H

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace spinq {

using Complex = std::complex<double>;

/// Default validation tolerance for hermiticity, trace and positivity checks.
inline constexpr double kDefaultTolerance = 1e-10;

enum class Axis { X, Y, Z };

char axis_name(Axis axis);

/// An eigenvalue label of a Pauli matrix: `sign` is +1 or -1.
struct AxisSign {
    Axis axis;
    int sign;

    AxisSign(Axis axis, int sign);
};

/// Two-component state in the sigma_z eigenbasis.
struct Spinor {
    Complex up;
    Complex down;

    double norm2() const {
        return std::norm(up) + std::norm(down);
    }
};

/// General 2x2 complex matrix. Index 0 is spin-up along z, index 1 is spin-down.
class Matrix2 {
   public:
    constexpr Matrix2() = default;
    constexpr Matrix2(Complex a00, Complex a01, Complex a10, Complex a11) : e_{{{a00, a01}, {a10, a11}}} {
    }

    static Matrix2 identity() {
        return {1, 0, 0, 1};
    }

    Complex &operator()(int row, int col) {
        return e_[row][col];
    }
    const Complex &operator()(int row, int col) const {
        return e_[row][col];
    }

    Matrix2 adjoint() const;
    Complex trace() const;
    Complex det() const;
    /// Largest absolute entrywise difference.
    double max_abs_diff(const Matrix2 &other) const;

    Matrix2 operator*(const Matrix2 &rhs) const;
    Matrix2 operator+(const Matrix2 &rhs) const;
    Matrix2 operator-(const Matrix2 &rhs) const;
    Matrix2 operator*(Complex scale) const;
    Spinor operator*(const Spinor &v) const;

   private:
    std::array<std::array<Complex, 2>, 2> e_{};
};

/// Bloch vector in the convention b = <sigma>/2, so pure states have |b| = 1/2.
struct BlochVector {
    double x = 0;
    double y = 0;
    double z = 0;

    double norm() const;
};

/// Outcome of checking a 2x2 matrix against the density-matrix axioms.
struct ValidationReport {
    double hermiticity_deviation = 0;
    double trace_deviation = 0;
    double determinant = 0;
    /// Smallest eigenvalue of the Hermitian part, from trace and determinant.
    double min_eigenvalue = 0;
    double tolerance = kDefaultTolerance;

    bool hermitian() const {
        return hermiticity_deviation <= tolerance;
    }
    bool unit_trace() const {
        return trace_deviation <= tolerance;
    }
    bool positive() const {
        return min_eigenvalue >= -tolerance;
    }
    bool passed() const {
        return hermitian() && unit_trace() && positive();
    }
    std::string describe() const;
};

/// Thrown when an input cannot represent a physical state.
class AdmissibilityError : public std::domain_error {
   public:
    AdmissibilityError(const std::string &what, ValidationReport report)
        : std::domain_error(what), report_(report) {
    }
    const ValidationReport &report() const {
        return report_;
    }

   private:
    ValidationReport report_;
};

ValidationReport validate_density(const Matrix2 &m, double tol = kDefaultTolerance);

/// A validated spin-1/2 density matrix.
class DensityMatrix {
   public:
    /// Throws AdmissibilityError unless `m` is Hermitian, unit-trace and PSD within `tol`.
    explicit DensityMatrix(const Matrix2 &m, double tol = kDefaultTolerance);

    const Matrix2 &matrix() const {
        return m_;
    }
    Complex pp() const {
        return m_(0, 0);
    }
    Complex pm() const {
        return m_(0, 1);
    }
    Complex mp() const {
        return m_(1, 0);
    }
    Complex mm() const {
        return m_(1, 1);
    }
    double purity() const;

   private:
    Matrix2 m_;
};

Matrix2 pauli_matrix(Axis axis);
Spinor eigenket(AxisSign a);
/// <a|b> for two Pauli eigenkets.
Complex overlap(AxisSign a, AxisSign b);
/// <cx x|by y><by y|az z><az2 z|cx x>.
Complex overlap_triple(int cx, int by, int az, int az2);
/// <u|M|v>.
Complex matrix_element(const Spinor &u, const Matrix2 &m, const Spinor &v);

DensityMatrix density_from_bloch(const BlochVector &b, double tol = kDefaultTolerance);
BlochVector bloch_from_density(const DensityMatrix &rho);
/// rho = (1 + mx sx + my sy + mz sz) / 2 with m_k = <sigma_k>.
DensityMatrix density_from_mean_values(double mx, double my, double mz, double tol = kDefaultTolerance);

}  // namespace spinq

#endif
