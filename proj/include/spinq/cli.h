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

#ifndef SPINQ_CLI_H
#define SPINQ_CLI_H

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinq/general_inversion.h"
#include "spinq/quasiprob.h"
#include "spinq/spin_core.h"
#include "spinq/tomography.h"

namespace spinq::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char *kSchemaVersion = "1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitAdmissibility = 3,
};

/// Bad flags, unreadable input, or a document that does not match the schema.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A state given on the command line:
///   up_z | up_x | up_y | unpolarized
///   bloch=bx,by,bz
///   rho=re,im,re,im,re,im,re,im      (rho_{++}, rho_{+-}, rho_{-+}, rho_{--})
///   w_axes=wx,wy,wz
struct StateSpec {
    enum class Kind { kNamed, kBloch, kRho, kWAxes };

    Kind kind = Kind::kNamed;
    std::string name;
    std::array<double, 3> values{};
    Matrix2 rho;

    /// Throws UsageError on malformed text.
    static StateSpec parse(const std::string &text);
    /// Throws AdmissibilityError if the state is not physical.
    DensityMatrix density(double tol = kDefaultTolerance) const;
    Json to_json() const;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json &j);

Json matrix_to_json(const Matrix2 &m);
Json matrix_to_json(const Eigen::MatrixXcd &m);
Matrix2 matrix2_from_json(const Json &j);
Eigen::MatrixXcd matrix_from_json(const Json &j);

Json table_to_json(const QuasiProbTable &t);
/// Needs exactly one record per vertex; throws UsageError otherwise.
QuasiProbTable table_from_json(const Json &j);

Json triple_to_json(const AxisTriple &t);
AxisTriple triple_from_json(const Json &j);

Json validation_to_json(const ValidationReport &r);
Json validation_to_json(const ValidationReportJ &r);
Json admissibility_to_json(const AdmissibilityReport &r);

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace spinq::cli

#endif
