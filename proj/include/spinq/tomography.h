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

#ifndef SPINQ_TOMOGRAPHY_H
#define SPINQ_TOMOGRAPHY_H

#include <array>

#include "spinq/spin_core.h"

namespace spinq {

/// Reduces an angle into [0, 2*pi).
double wrap_angle(double radians);

/// Euler angles (phi, theta, psi) in radians; canonical ranges are
/// 0 <= phi, psi < 2*pi and 0 <= theta <= pi.
struct EulerAngles {
    double phi = 0;
    double theta = 0;
    double psi = 0;

    /// Same rotation with every angle in its canonical range. Reflecting theta
    /// shifts phi and psi by pi.
    EulerAngles normalized() const;
};

/// A quantization axis given by polar angles.
struct Direction {
    double theta = 0;
    double phi = 0;

    Direction normalized() const;
    std::array<double, 3> unit_vector() const;
    /// Euler angles (phi, theta, 0) whose rotation measures along this direction.
    EulerAngles euler() const {
        return {phi, theta, 0};
    }
};

/// Axis directions used for three-axis tomography: x = (pi/2, 0), y = (pi/2, pi/2), z = (0, 0).
Direction axis_direction(Axis axis);

/// Probabilities of the outcomes +1/2 and -1/2 along `direction`.
struct Tomogram {
    double w_plus = 0;
    double w_minus = 0;
    Direction direction;
};

/// w(+1/2, u(j)) for j = x, y, z.
struct AxisTriple {
    double wx_plus = 0.5;
    double wy_plus = 0.5;
    double wz_plus = 0.5;

    /// (2wx-1)^2 + (2wy-1)^2 + (2wz-1)^2, which is at most 1 for physical triples.
    double polarization2() const;
};

/// The spin-1/2 rotation matrix
///   [ cos(t/2) e^{ i(f+s)/2}   sin(t/2) e^{-i(f-s)/2} ]
///   [-sin(t/2) e^{ i(f-s)/2}   cos(t/2) e^{-i(f+s)/2} ]
/// with f = phi, t = theta, s = psi, evaluated on the normalized angles.
Matrix2 rotation_matrix(const EulerAngles &u);

/// D(u) rho D(u)^dagger.
DensityMatrix rotate_density(const DensityMatrix &rho, const EulerAngles &u, double tol = kDefaultTolerance);

/// Diagonal of the rotated density matrix.
Tomogram w_value(const DensityMatrix &rho, const EulerAngles &u);
Tomogram w_value(const DensityMatrix &rho, const Direction &d);

/// w(+-1/2, u) = 1/2 +- b.u. Throws AdmissibilityError if |b| > 1/2 + tol.
Tomogram w_from_bloch(const BlochVector &b, const Direction &d, double tol = kDefaultTolerance);

/// <sigma_u> = 2 w(+1/2, u) - 1.
double mean_from_w(const Tomogram &t);

/// Samples w along the x, y and z axes.
AxisTriple measure_axes(const DensityMatrix &rho);

/// The matrix built from the triple, before validation.
Matrix2 raw_density_from_w_axes(const AxisTriple &t);

/// Throws AdmissibilityError if the triple is not physical.
DensityMatrix density_from_w_axes(const AxisTriple &t, double tol = kDefaultTolerance);

}  // namespace spinq

#endif
