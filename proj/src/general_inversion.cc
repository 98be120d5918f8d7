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

#include "spinq/general_inversion.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace spinq {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int fact(int n) {
    static std::mutex mu;
    static std::vector<cpp_int> table{1};
    if (n < 0) {
        throw std::invalid_argument("negative factorial");
    }
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(table.size()) <= n) {
        table.push_back(table.back() * static_cast<unsigned>(table.size()));
    }
    return table[n];
}

long double factorial_ld(int n) {
    static const std::vector<long double> table = [] {
        std::vector<long double> t(171);
        t[0] = 1;
        for (int k = 1; k < 171; k++) {
            t[k] = t[k - 1] * k;
        }
        return t;
    }();
    if (n < 0 || n >= static_cast<int>(table.size())) {
        throw std::out_of_range("factorial argument out of range");
    }
    return table[n];
}

bool in_range(HalfInteger j, HalfInteger m) {
    return std::abs(m.twice()) <= j.twice() && (j.twice() - m.twice()) % 2 == 0;
}

void check_projection(HalfInteger j, HalfInteger m) {
    if (j.twice() < 0 || !in_range(j, m)) {
        throw std::out_of_range("projection " + m.str() + " is not valid for spin " + j.str());
    }
}

// Textbook small-d: d^j_{m'm}(beta) with d^{1/2}_{1/2,-1/2} = -sin(beta/2).
double textbook_d(HalfInteger j, HalfInteger mp, HalfInteger m, double beta) {
    const int jpm = (j.twice() + mp.twice()) / 2;   // j + m'
    const int jmmp = (j.twice() - mp.twice()) / 2;  // j - m'
    const int jpmm = (j.twice() + m.twice()) / 2;   // j + m
    const int jmm = (j.twice() - m.twice()) / 2;    // j - m
    const int diff = (mp.twice() - m.twice()) / 2;  // m' - m

    const long double c = std::cos(static_cast<long double>(beta) / 2);
    const long double s = std::sin(static_cast<long double>(beta) / 2);
    const long double prefactor =
        std::sqrt(factorial_ld(jpm) * factorial_ld(jmmp) * factorial_ld(jpmm) * factorial_ld(jmm));

    long double sum = 0;
    const int k_lo = std::max(0, -diff);
    const int k_hi = std::min(jpmm, jmmp);
    for (int k = k_lo; k <= k_hi; k++) {
        long double term = prefactor / (factorial_ld(jpmm - k) * factorial_ld(k) * factorial_ld(diff + k) *
                                        factorial_ld(jmmp - k));
        int cos_power = j.twice() - diff - 2 * k;
        int sin_power = diff + 2 * k;
        term *= std::pow(c, cos_power) * std::pow(s, sin_power);
        sum += ((diff + k) % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sum);
}

}  // namespace

HalfInteger HalfInteger::from_double(double value) {
    double twice = 2 * value;
    double rounded = std::round(twice);
    if (!std::isfinite(value) || std::abs(twice - rounded) > 1e-9) {
        std::ostringstream msg;
        msg << value << " is not an integer or half-integer";
        throw std::invalid_argument(msg.str());
    }
    return from_twice(static_cast<int>(rounded));
}

HalfInteger HalfInteger::parse(const std::string &text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            double v = std::stod(text, &used);
            if (used != text.size()) {
                throw std::invalid_argument("trailing characters");
            }
            return from_double(v);
        }
        std::size_t used_num = 0;
        std::size_t used_den = 0;
        std::string num_text = text.substr(0, slash);
        std::string den_text = text.substr(slash + 1);
        int num = std::stoi(num_text, &used_num);
        int den = std::stoi(den_text, &used_den);
        if (used_num != num_text.size() || used_den != den_text.size() || (den != 1 && den != 2)) {
            throw std::invalid_argument("bad fraction");
        }
        return from_twice(den == 2 ? num : 2 * num);
    } catch (const std::logic_error &) {
        throw std::invalid_argument("cannot parse '" + text + "' as an integer or half-integer");
    }
}

std::string HalfInteger::str() const {
    if (is_integer()) {
        return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
}

std::vector<HalfInteger> projections(HalfInteger j) {
    if (j.twice() < 0) {
        throw std::invalid_argument("spin must be non-negative");
    }
    std::vector<HalfInteger> out;
    for (int t = j.twice(); t >= -j.twice(); t -= 2) {
        out.push_back(HalfInteger::from_twice(t));
    }
    return out;
}

int projection_index(HalfInteger j, HalfInteger m) {
    check_projection(j, m);
    return (j.twice() - m.twice()) / 2;
}

double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1, HalfInteger m2, HalfInteger m3) {
    const int tj1 = j1.twice(), tj2 = j2.twice(), tj3 = j3.twice();
    const int tm1 = m1.twice(), tm2 = m2.twice(), tm3 = m3.twice();
    if (tj1 < 0 || tj2 < 0 || tj3 < 0) {
        return 0;
    }
    if (tm1 + tm2 + tm3 != 0) {
        return 0;
    }
    if (!in_range(j1, m1) || !in_range(j2, m2) || !in_range(j3, m3)) {
        return 0;
    }
    if ((tj1 + tj2 + tj3) % 2 != 0) {
        return 0;
    }
    if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) {
        return 0;
    }

    // Integer combinations of the doubled arguments.
    const int a = (tj1 + tj2 - tj3) / 2;   // j1 + j2 - j3
    const int b = (tj1 - tj2 + tj3) / 2;   // j1 - j2 + j3
    const int c = (-tj1 + tj2 + tj3) / 2;  // -j1 + j2 + j3
    const int s = (tj1 + tj2 + tj3) / 2;   // j1 + j2 + j3

    cpp_rational norm2(fact(a) * fact(b) * fact(c), fact(s + 1));
    norm2 *= fact((tj1 + tm1) / 2) * fact((tj1 - tm1) / 2) * fact((tj2 + tm2) / 2) * fact((tj2 - tm2) / 2) *
             fact((tj3 + tm3) / 2) * fact((tj3 - tm3) / 2);

    const int k_lo = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int k_hi = std::min({a, (tj1 - tm1) / 2, (tj2 + tm2) / 2});
    cpp_rational sum = 0;
    for (int k = k_lo; k <= k_hi; k++) {
        cpp_int den = fact(k) * fact((tj3 - tj2 + tm1) / 2 + k) * fact((tj3 - tj1 - tm2) / 2 + k) * fact(a - k) *
                      fact((tj1 - tm1) / 2 - k) * fact((tj2 + tm2) / 2 - k);
        cpp_rational term(cpp_int(1), den);
        if (k % 2 == 0) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if (sum == 0) {
        return 0;
    }
    cpp_rational magnitude2 = sum * sum * norm2;
    double value = std::sqrt(magnitude2.convert_to<double>());
    // Overall phase (-1)^{j1 - j2 - m3}; the exponent is an integer here.
    const int phase_exp = (tj1 - tj2 - tm3) / 2;
    bool negative = (sum < 0) != (phase_exp % 2 != 0);
    return negative ? -value : value;
}

double wigner_d(HalfInteger j, HalfInteger mp, HalfInteger m, double theta) {
    check_projection(j, mp);
    check_projection(j, m);
    return textbook_d(j, m, mp, theta);
}

Complex wigner_D(HalfInteger j, HalfInteger mp, HalfInteger m, const EulerAngles &angles) {
    EulerAngles u = angles.normalized();
    double d = wigner_d(j, mp, m, u.theta);
    return std::polar(d, m.value() * u.phi + mp.value() * u.psi);
}

Eigen::MatrixXcd wigner_D_matrix(HalfInteger j, const EulerAngles &u) {
    auto ms = projections(j);
    const int n = static_cast<int>(ms.size());
    Eigen::MatrixXcd out(n, n);
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < n; c++) {
            out(r, c) = wigner_D(j, ms[r], ms[c], u);
        }
    }
    return out;
}

std::string ValidationReportJ::describe() const {
    std::ostringstream out;
    out.precision(17);
    out << "hermiticity deviation " << hermiticity_deviation << "; trace deviation " << trace_deviation
        << "; min eigenvalue " << min_eigenvalue << "; tol " << tolerance;
    return out.str();
}

ValidationReportJ validate_density_j(const Eigen::MatrixXcd &m, double tol) {
    ValidationReportJ r;
    r.tolerance = tol;
    if (m.rows() != m.cols() || m.rows() == 0) {
        r.hermiticity_deviation = std::numeric_limits<double>::infinity();
        r.trace_deviation = std::numeric_limits<double>::infinity();
        r.min_eigenvalue = -std::numeric_limits<double>::infinity();
        return r;
    }
    const auto n = m.rows();
    for (Eigen::Index a = 0; a < n; a++) {
        r.hermiticity_deviation = std::max(r.hermiticity_deviation, std::abs(m(a, a).imag()));
        for (Eigen::Index b = a + 1; b < n; b++) {
            r.hermiticity_deviation = std::max(r.hermiticity_deviation, std::abs(m(a, b) - std::conj(m(b, a))));
        }
    }
    r.trace_deviation = std::abs(m.trace() - 1.0);
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = solver.eigenvalues().minCoeff();
    if (!std::isfinite(r.hermiticity_deviation) || !std::isfinite(r.trace_deviation) ||
        !std::isfinite(r.min_eigenvalue)) {
        r.hermiticity_deviation = std::numeric_limits<double>::infinity();
    }
    return r;
}

DensityMatrixJ::DensityMatrixJ(HalfInteger j, Eigen::MatrixXcd m, double tol) : j_(j), m_(std::move(m)) {
    if (j.twice() < 0 || m_.rows() != j.twice() + 1 || m_.cols() != j.twice() + 1) {
        throw std::invalid_argument("density matrix for spin " + j.str() + " must be square of size 2j+1");
    }
    ValidationReportJ r = validate_density_j(m_, tol);
    if (!r.passed()) {
        ValidationReport summary;
        summary.hermiticity_deviation = r.hermiticity_deviation;
        summary.trace_deviation = r.trace_deviation;
        summary.min_eigenvalue = r.min_eigenvalue;
        summary.tolerance = tol;
        throw AdmissibilityError("not a valid spin-" + j.str() + " density matrix: " + r.describe(), summary);
    }
}

DensityMatrixJ to_spin_j(const DensityMatrix &rho) {
    Eigen::MatrixXcd m(2, 2);
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            m(r, c) = rho.matrix()(r, c);
        }
    }
    return DensityMatrixJ(kHalf, m);
}

std::vector<double> w_value_j(const DensityMatrixJ &rho, const EulerAngles &u) {
    Eigen::MatrixXcd d = wigner_D_matrix(rho.j(), u);
    Eigen::MatrixXcd rotated = d * rho.matrix() * d.adjoint();
    std::vector<double> out(static_cast<std::size_t>(rho.dim()));
    for (int k = 0; k < rho.dim(); k++) {
        out[k] = rotated(k, k).real();
    }
    return out;
}

void gauss_legendre(int n, std::vector<double> &nodes, std::vector<double> &weights) {
    if (n < 1) {
        throw std::invalid_argument("Gauss-Legendre needs at least one node");
    }
    nodes.assign(n, 0);
    weights.assign(n, 0);
    for (int i = 0; i < (n + 1) / 2; i++) {
        // Tricomi's estimate of the i-th largest root, refined by Newton.
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int iter = 0; iter < 100; iter++) {
            long double p0 = 1;
            long double p1 = x;
            for (int k = 2; k <= n; k++) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            long double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-19L) {
                break;
            }
        }
        // Recompute the derivative at the converged root.
        long double p0 = 1;
        long double p1 = x;
        for (int k = 2; k <= n; k++) {
            long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        long double w = 2 / ((1 - x * x) * dp * dp);
        nodes[n - 1 - i] = static_cast<double>(x);
        nodes[i] = static_cast<double>(-x);
        weights[n - 1 - i] = static_cast<double>(w);
        weights[i] = static_cast<double>(w);
    }
}

QuadratureGrid::QuadratureGrid(int n_theta, int n_phi, int n_psi) {
    if (n_theta < 1 || n_phi < 1 || n_psi < 1) {
        throw std::invalid_argument("quadrature node counts must be positive");
    }
    gauss_legendre(n_theta, cos_theta_, theta_weight_);
    for (int k = 0; k < n_phi; k++) {
        phi_.push_back(2 * std::numbers::pi * k / n_phi);
    }
    for (int k = 0; k < n_psi; k++) {
        psi_.push_back(2 * std::numbers::pi * k / n_psi);
    }
}

double QuadratureGrid::theta(int i) const {
    return std::acos(cos_theta_[i]);
}

double QuadratureGrid::weight(int i_theta, int, int) const {
    // (1 / 8 pi^2) * (2 pi / n_phi) * (2 pi / n_psi) * w_theta
    return theta_weight_[i_theta] / (2.0 * n_phi() * n_psi());
}

double QuadratureGrid::total_weight() const {
    double total = 0;
    for (double w : theta_weight_) {
        total += w;
    }
    return total / 2;
}

QuadratureGrid build_quadrature(HalfInteger j, int oversample) {
    if (oversample < 1) {
        throw std::invalid_argument("oversample must be at least 1");
    }
    if (j.twice() < 0) {
        throw std::invalid_argument("spin must be non-negative");
    }
    int n_angle = std::max(8, 2 * j.twice() + 2) * oversample;
    int n_theta = std::max(8, j.twice() + 2) * oversample;
    return QuadratureGrid(n_theta, n_angle, n_angle);
}

const char *sign_convention_name(SignConvention c) {
    switch (c) {
        case SignConvention::kIntegerExponent:
            return "integer-exponent";
        case SignConvention::kComplexExponential:
            return "complex-exponential";
    }
    return "unknown";
}

DensityMatrixJ Reconstruction::density() const {
    return DensityMatrixJ(j, matrix, validation.tolerance);
}

TomogramVectorFunction tomogram_of(const DensityMatrixJ &rho) {
    return [rho](double theta, double phi) { return w_value_j(rho, EulerAngles{phi, theta, 0}); };
}

TomogramInverter::TomogramInverter(HalfInteger j, QuadratureGrid grid, ReconstructionOptions options)
    : j_(j), grid_(std::move(grid)), options_(options) {
    if (j.twice() < 0) {
        throw std::invalid_argument("spin must be non-negative");
    }
    const auto ms = projections(j);
    const int dim = static_cast<int>(ms.size());
    const int n_theta = grid_.n_theta();
    const int n_phi = grid_.n_phi();
    const int n_psi = grid_.n_psi();

    for (int j3 = 0; j3 <= j.twice(); j3++) {
        HalfInteger big_j = HalfInteger::from_int(j3);
        for (int m3 = -j3; m3 <= j3; m3++) {
            HalfInteger big_m = HalfInteger::from_int(m3);

            std::vector<Complex> kernel(static_cast<std::size_t>(n_theta) * n_phi);
            for (int t = 0; t < n_theta; t++) {
                for (int p = 0; p < n_phi; p++) {
                    Complex acc = 0;
                    for (int s = 0; s < n_psi; s++) {
                        EulerAngles u{grid_.phi(p), grid_.theta(t), grid_.psi(s)};
                        acc += grid_.weight(t, p, s) * wigner_D(big_j, HalfInteger{}, big_m, u);
                    }
                    kernel[static_cast<std::size_t>(t) * n_phi + p] = acc;
                }
            }
            kernel_.push_back(std::move(kernel));

            const double degeneracy2 = static_cast<double>((2 * j3 + 1) * (2 * j3 + 1));
            std::vector<Complex> coeff(static_cast<std::size_t>(dim) * dim * dim);
            for (int i1 = 0; i1 < dim; i1++) {
                double first = wigner_3j(j, j, big_j, ms[i1], -ms[i1], HalfInteger{});
                if (first == 0) {
                    continue;
                }
                for (int a = 0; a < dim; a++) {
                    for (int b = 0; b < dim; b++) {
                        double second = wigner_3j(j, j, big_j, ms[a], -ms[b], big_m);
                        if (second == 0) {
                            continue;
                        }
                        Complex sign;
                        if (options_.signs == SignConvention::kIntegerExponent) {
                            int exponent = (ms[i1].twice() - ms[b].twice()) / 2;
                            sign = (exponent % 2 == 0) ? 1.0 : -1.0;
                        } else {
                            sign = std::polar(1.0, std::numbers::pi * (ms[i1].value() + ms[b].value()));
                        }
                        coeff[(static_cast<std::size_t>(i1) * dim + a) * dim + b] =
                            degeneracy2 * sign * first * second;
                    }
                }
            }
            coefficients_.push_back(std::move(coeff));
        }
    }
}

Reconstruction TomogramInverter::reconstruct(const TomogramVectorFunction &w) const {
    const int dim = j_.twice() + 1;
    const int n_theta = grid_.n_theta();
    const int n_phi = grid_.n_phi();
    const double tol = options_.tolerance;

    Reconstruction out;
    out.j = j_;
    out.signs = options_.signs;

    std::vector<double> samples(static_cast<std::size_t>(n_theta) * n_phi * dim);
    for (int t = 0; t < n_theta; t++) {
        for (int p = 0; p < n_phi; p++) {
            double theta = grid_.theta(t);
            double phi = grid_.phi(p);
            std::vector<double> values = w(theta, phi);
            if (static_cast<int>(values.size()) != dim) {
                throw TomogramError("tomogram returned " + std::to_string(values.size()) + " values, expected " +
                                    std::to_string(dim));
            }
            double total = 0;
            for (int m = 0; m < dim; m++) {
                double v = values[m];
                if (!std::isfinite(v) || v < -tol || v > 1 + tol) {
                    std::ostringstream msg;
                    msg.precision(17);
                    msg << "tomogram value " << v << " outside [0,1] at theta=" << theta << ", phi=" << phi;
                    throw TomogramError(msg.str());
                }
                total += v;
                samples[(static_cast<std::size_t>(t) * n_phi + p) * dim + m] = v;
            }
            out.max_normalization_deviation = std::max(out.max_normalization_deviation, std::abs(total - 1));
        }
    }
    if (out.max_normalization_deviation > tol) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "tomogram samples violate normalization by up to " << out.max_normalization_deviation;
        throw TomogramError(msg.str());
    }

    out.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    const std::size_t nodes = static_cast<std::size_t>(n_theta) * n_phi;
    for (std::size_t k = 0; k < kernel_.size(); k++) {
        std::vector<Complex> integral(dim, 0.0);
        for (std::size_t node = 0; node < nodes; node++) {
            for (int m = 0; m < dim; m++) {
                integral[m] += kernel_[k][node] * samples[node * dim + m];
            }
        }
        const auto &coeff = coefficients_[k];
        for (int i1 = 0; i1 < dim; i1++) {
            for (int a = 0; a < dim; a++) {
                for (int b = 0; b < dim; b++) {
                    out.matrix(a, b) += coeff[(static_cast<std::size_t>(i1) * dim + a) * dim + b] * integral[i1];
                }
            }
        }
    }
    out.validation = validate_density_j(out.matrix, tol);
    return out;
}

Reconstruction reconstruct_density_j(
    const TomogramFunction &w, HalfInteger j, const QuadratureGrid &grid, const ReconstructionOptions &options) {
    auto ms = projections(j);
    TomogramVectorFunction vec = [&](double theta, double phi) {
        std::vector<double> out;
        out.reserve(ms.size());
        for (HalfInteger m : ms) {
            out.push_back(w(m, theta, phi));
        }
        return out;
    };
    return TomogramInverter(j, grid, options).reconstruct(vec);
}

Reconstruction reconstruct_density_j(
    const TomogramVectorFunction &w,
    HalfInteger j,
    const QuadratureGrid &grid,
    const ReconstructionOptions &options) {
    return TomogramInverter(j, grid, options).reconstruct(w);
}

}  // namespace spinq
