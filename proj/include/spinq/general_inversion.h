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

#ifndef SPINQ_GENERAL_INVERSION_H
#define SPINQ_GENERAL_INVERSION_H

#include <compare>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spinq/spin_core.h"
#include "spinq/tomography.h"

namespace spinq {

/// An integer or half-integer, stored as twice its value.
class HalfInteger {
   public:
    constexpr HalfInteger() = default;

    static constexpr HalfInteger from_twice(int twice) {
        HalfInteger h;
        h.twice_ = twice;
        return h;
    }
    static constexpr HalfInteger from_int(int value) {
        return from_twice(2 * value);
    }
    /// Throws std::invalid_argument unless `value` is a multiple of 1/2.
    static HalfInteger from_double(double value);
    /// Parses "3", "-1/2", "1.5".
    static HalfInteger parse(const std::string &text);

    constexpr int twice() const {
        return twice_;
    }
    constexpr double value() const {
        return twice_ / 2.0;
    }
    constexpr bool is_integer() const {
        return twice_ % 2 == 0;
    }
    std::string str() const;

    constexpr HalfInteger operator-() const {
        return from_twice(-twice_);
    }
    constexpr HalfInteger operator+(HalfInteger o) const {
        return from_twice(twice_ + o.twice_);
    }
    constexpr HalfInteger operator-(HalfInteger o) const {
        return from_twice(twice_ - o.twice_);
    }
    constexpr auto operator<=>(const HalfInteger &) const = default;

   private:
    int twice_ = 0;
};

inline constexpr HalfInteger kHalf = HalfInteger::from_twice(1);

/// Projections j, j-1, ..., -j; this is the basis order of every spin-j matrix.
std::vector<HalfInteger> projections(HalfInteger j);
/// Row/column of projection m in a spin-j matrix.
int projection_index(HalfInteger j, HalfInteger m);

/// Wigner 3j symbol via the Racah sum in exact rational arithmetic.
/// Returns 0 whenever a selection rule fails.
double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3);

/// Small-d element in the convention of rotation_matrix():
/// wigner_d(j, mp, m, theta) is the textbook d^j_{m mp}(theta), so
/// wigner_d(1/2, 1/2, -1/2, theta) = +sin(theta/2).
/// Throws std::out_of_range if |mp| > j or |m| > j or the parities differ.
double wigner_d(HalfInteger j, HalfInteger mp, HalfInteger m, double theta);

/// e^{i m phi} wigner_d(j, mp, m, theta) e^{i mp psi}; at j = 1/2 this is rotation_matrix(u).
Complex wigner_D(HalfInteger j, HalfInteger mp, HalfInteger m, const EulerAngles &u);
Eigen::MatrixXcd wigner_D_matrix(HalfInteger j, const EulerAngles &u);

struct ValidationReportJ {
    double hermiticity_deviation = 0;
    double trace_deviation = 0;
    double min_eigenvalue = 0;
    double tolerance = kDefaultTolerance;

    bool passed() const {
        return hermiticity_deviation <= tolerance && trace_deviation <= tolerance && min_eigenvalue >= -tolerance;
    }
    std::string describe() const;
};

ValidationReportJ validate_density_j(const Eigen::MatrixXcd &m, double tol = kDefaultTolerance);

/// Validated (2j+1)x(2j+1) density matrix, basis ordered m = j, ..., -j.
class DensityMatrixJ {
   public:
    /// Throws std::invalid_argument on a size mismatch and AdmissibilityError on invalid matrices.
    DensityMatrixJ(HalfInteger j, Eigen::MatrixXcd m, double tol = kDefaultTolerance);

    HalfInteger j() const {
        return j_;
    }
    int dim() const {
        return static_cast<int>(m_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }
    Complex operator()(HalfInteger mp1, HalfInteger mp2) const {
        return m_(projection_index(j_, mp1), projection_index(j_, mp2));
    }

   private:
    HalfInteger j_;
    Eigen::MatrixXcd m_;
};

DensityMatrixJ to_spin_j(const DensityMatrix &rho);

/// Diagonal of D(u) rho D(u)^dagger, ordered m = j, ..., -j.
std::vector<double> w_value_j(const DensityMatrixJ &rho, const EulerAngles &u);

/// Product grid over the Euler angles: Gauss-Legendre in cos(theta), uniform in
/// phi and psi. Weights include the 1/(8 pi^2) normalization, so they sum to 1.
class QuadratureGrid {
   public:
    QuadratureGrid(int n_theta, int n_phi, int n_psi);

    int n_theta() const {
        return static_cast<int>(cos_theta_.size());
    }
    int n_phi() const {
        return static_cast<int>(phi_.size());
    }
    int n_psi() const {
        return static_cast<int>(psi_.size());
    }
    double theta(int i) const;
    double phi(int i) const {
        return phi_[i];
    }
    double psi(int i) const {
        return psi_[i];
    }
    double weight(int i_theta, int i_phi, int i_psi) const;
    double total_weight() const;

   private:
    std::vector<double> cos_theta_;
    std::vector<double> theta_weight_;
    std::vector<double> phi_;
    std::vector<double> psi_;
};

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights);

/// Grid that integrates the reconstruction integrand exactly at spin j:
/// n_phi = n_psi = max(8, 4j+2) * oversample, n_theta = max(8, 2j+2) * oversample.
QuadratureGrid build_quadrature(HalfInteger j, int oversample = 2);

/// How the half-integer powers (-1)^{m1} and (-1)^{m'2} are evaluated.
enum class SignConvention {
    /// Combined as (-1)^{m1 - m'2}, an integer power. Recovers rho at every j.
    kIntegerExponent,
    /// Each as e^{i pi m}. Matches kIntegerExponent for integer j and yields -rho for half-integer j.
    kComplexExponential,
};

const char *sign_convention_name(SignConvention c);

struct ReconstructionOptions {
    double tolerance = kDefaultTolerance;
    SignConvention signs = SignConvention::kIntegerExponent;
};

/// Thrown when tomogram samples are not a probability family on the grid.
class TomogramError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

struct Reconstruction {
    HalfInteger j;
    Eigen::MatrixXcd matrix;
    ValidationReportJ validation;
    /// Largest |sum_m w(m, theta, phi) - 1| over the grid.
    double max_normalization_deviation = 0;
    SignConvention signs = SignConvention::kIntegerExponent;

    /// Throws AdmissibilityError if the reconstructed matrix is not a density matrix.
    DensityMatrixJ density() const;
};

/// w(m1, theta, phi).
using TomogramFunction = std::function<double(HalfInteger m1, double theta, double phi)>;
/// All 2j+1 values of w at (theta, phi), ordered m1 = j, ..., -j.
using TomogramVectorFunction = std::function<std::vector<double>(double theta, double phi)>;

TomogramVectorFunction tomogram_of(const DensityMatrixJ &rho);

/// Inverts the spin-j tomogram with the 3j-symbol formula
///   rho_{m'1 m'2} = (-1)^{m'2} sum_{j3, m3} (2j3+1)^2 sum_{m1} Int (-1)^{m1} w(m1, theta, phi)
///                   D^{(j3)}_{0 m3}(phi, theta, psi) (j j j3; m1 -m1 0) (j j j3; m'1 -m'2 m3) dOmega.
/// The 3j coefficients and the grid-summed D factors are computed once and reused across calls.
class TomogramInverter {
   public:
    TomogramInverter(HalfInteger j, QuadratureGrid grid, ReconstructionOptions options = {});

    HalfInteger j() const {
        return j_;
    }
    const QuadratureGrid &grid() const {
        return grid_;
    }
    const ReconstructionOptions &options() const {
        return options_;
    }

    /// Throws TomogramError before integrating if any grid sample is outside [0, 1]
    /// or the samples at a node do not sum to 1, both within the tolerance.
    Reconstruction reconstruct(const TomogramVectorFunction &w) const;

   private:
    HalfInteger j_;
    QuadratureGrid grid_;
    ReconstructionOptions options_;
    // kernel_[k][t * n_phi + p] = sum over psi of weight * D^{(j3)}_{0 m3}, k enumerating (j3, m3).
    std::vector<std::vector<Complex>> kernel_;
    // Per (j3, m3): coefficient matrix over (m1, m'1, m'2) flattened, sign factors included.
    std::vector<std::vector<Complex>> coefficients_;
};

Reconstruction reconstruct_density_j(
    const TomogramFunction &w, HalfInteger j, const QuadratureGrid &grid, const ReconstructionOptions &options = {});
Reconstruction reconstruct_density_j(
    const TomogramVectorFunction &w,
    HalfInteger j,
    const QuadratureGrid &grid,
    const ReconstructionOptions &options = {});

}  // namespace spinq

#endif
