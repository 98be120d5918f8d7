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

#ifndef SPINQ_QUASIPROB_H
#define SPINQ_QUASIPROB_H

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "spinq/spin_core.h"

namespace spinq {

/// A cube vertex (c, b, a): eigenvalues of sigma_x, sigma_y, sigma_z.
struct VertexIndex {
    int c;
    int b;
    int a;

    bool operator==(const VertexIndex &) const = default;
};

/// The eight complex weights p(c,b,a) of the spin-1/2 P distribution.
///
/// Storage order: c varies fastest, then b, then a,
/// with +1 before -1, i.e. (1,1,1), (-1,1,1), (1,-1,1), (-1,-1,1), (1,1,-1), ...
class QuasiProbTable {
   public:
    static constexpr std::size_t kSize = 8;

    QuasiProbTable() = default;
    explicit QuasiProbTable(const std::array<Complex, kSize> &entries) : entries_(entries) {
    }

    static VertexIndex vertex(std::size_t k);
    /// Throws std::invalid_argument when a component is not +-1.
    static std::size_t index(int c, int b, int a);

    Complex &at(int c, int b, int a) {
        return entries_[index(c, b, a)];
    }
    Complex at(int c, int b, int a) const {
        return entries_[index(c, b, a)];
    }
    Complex &operator[](std::size_t k) {
        return entries_[k];
    }
    Complex operator[](std::size_t k) const {
        return entries_[k];
    }
    const std::array<Complex, kSize> &entries() const {
        return entries_;
    }

    Complex sum() const;
    double max_abs_diff(const QuasiProbTable &other) const;

    QuasiProbTable operator+(const QuasiProbTable &rhs) const;
    QuasiProbTable operator*(double scale) const;

   private:
    std::array<Complex, kSize> entries_{};
};

/// Closed-form coefficients, e.g. p(1,1,1) = (1+i)/4 (rho_{++} + rho_{+-}).
QuasiProbTable p_from_density(const DensityMatrix &rho);

/// p(c,b,a) = <c_x|b_y><b_y|a_z><a_z|rho|c_x>, built only from eigenket overlaps.
QuasiProbTable p_oracle(const DensityMatrix &rho);

/// The matrix defined by p(1,1,1) and p(-1,1,1) alone, before any validation.
Matrix2 raw_density_from_p(const QuasiProbTable &t);

/// Inverts the table using p(1,1,1) and p(-1,1,1) plus hermiticity and unit trace.
/// Throws AdmissibilityError when the reconstruction is not a density matrix.
DensityMatrix density_from_p(const QuasiProbTable &t, double tol = kDefaultTolerance);

/// Sum of the four entries whose `axis` component equals `sign`.
Complex marginal(const QuasiProbTable &t, Axis axis, int sign);

struct MarginalCheck {
    Axis axis;
    int sign;
    Complex value;
    /// Distance of the real part from [0, 1].
    double range_violation;
};

struct AdmissibilityReport {
    double tolerance = kDefaultTolerance;
    double total_sum_deviation = 0;
    std::vector<MarginalCheck> marginals;
    ValidationReport reconstructed;
    /// Per-entry distance between the table and the table rebuilt from its two defining entries.
    std::array<double, QuasiProbTable::kSize> redundancy_deviation{};
    double max_redundancy_deviation = 0;

    bool total_sum_ok() const {
        return total_sum_deviation <= tolerance;
    }
    bool marginals_ok() const;
    bool redundancy_ok() const {
        return max_redundancy_deviation <= tolerance;
    }
    bool passed() const {
        return total_sum_ok() && marginals_ok() && reconstructed.passed() && redundancy_ok();
    }
    std::vector<std::string> violations() const;
};

AdmissibilityReport check_admissibility(const QuasiProbTable &t, double tol = kDefaultTolerance);

}  // namespace spinq

#endif
