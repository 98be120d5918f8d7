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

#include "spinq/cli.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "spinq/radon_link.h"
#include "spinq/sampling.h"

namespace spinq::cli {

namespace {

double parse_real(const std::string &text, const std::string &context) {
    if (text.empty()) {
        throw UsageError("empty number in " + context);
    }
    errno = 0;
    char *end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
        throw UsageError("cannot parse '" + text + "' as a finite number in " + context);
    }
    return v;
}

std::vector<double> parse_list(const std::string &text, std::size_t expected, const std::string &context) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        out.push_back(parse_real(item, context));
    }
    if (!text.empty() && text.back() == ',') {
        throw UsageError("trailing comma in " + context);
    }
    if (out.size() != expected) {
        throw UsageError(context + " needs " + std::to_string(expected) + " comma-separated numbers, got " +
                         std::to_string(out.size()));
    }
    return out;
}

const std::map<std::string, BlochVector> &named_states() {
    static const std::map<std::string, BlochVector> states{
        {"up_z", {0, 0, 0.5}},
        {"up_x", {0.5, 0, 0}},
        {"up_y", {0, 0.5, 0}},
        {"unpolarized", {0, 0, 0}},
    };
    return states;
}

double number(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number()) {
        throw UsageError(std::string("expected numeric field '") + key + "'");
    }
    return j[key].get<double>();
}

int integer(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) {
        throw UsageError(std::string("expected integer field '") + key + "'");
    }
    return j[key].get<int>();
}

Json bloch_to_json(const BlochVector &b) {
    return Json::array({b.x, b.y, b.z});
}

Json header(const std::string &command, double tol) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["tolerance"] = tol;
    return doc;
}

Json density_json(const Matrix2 &m) {
    Json j;
    j["twice_j"] = 1;
    j["matrix"] = matrix_to_json(m);
    return j;
}

Json density_json(HalfInteger spin, const Eigen::MatrixXcd &m) {
    Json j;
    j["twice_j"] = spin.twice();
    j["matrix"] = matrix_to_json(m);
    return j;
}

Json error_json(const std::string &message, const ValidationReport &r) {
    Json j;
    j["message"] = message;
    j["validation"] = validation_to_json(r);
    return j;
}

Json error_json(const std::string &message) {
    Json j;
    j["message"] = message;
    return j;
}

Json read_document(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open input file '" + path + "'");
    }
    try {
        Json doc = Json::parse(in);
        if (!doc.is_object()) {
            throw UsageError("input document must be a JSON object");
        }
        return doc;
    } catch (const Json::parse_error &e) {
        throw UsageError(std::string("input is not valid JSON: ") + e.what());
    }
}

std::string format_17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct GlobalOptions {
    double tol = kDefaultTolerance;
    std::string output;
    std::string format = "doc";
    std::uint64_t seed = 0;
};

/// Result of one verb: a document and/or raw text, plus the exit code.
struct Outcome {
    Json doc;
    std::string text;
    int code = kExitOk;
    std::string message;
};

Outcome cmd_p_table(const std::string &state_text, const GlobalOptions &g) {
    StateSpec spec = StateSpec::parse(state_text);
    Outcome o;
    o.doc = header("p-table", g.tol);
    o.doc["state"] = spec.to_json();
    try {
        DensityMatrix rho = spec.density(g.tol);
        QuasiProbTable table = p_from_density(rho);
        AdmissibilityReport report = check_admissibility(table, g.tol);
        o.doc["rho"] = density_json(rho.matrix());
        o.doc["bloch"] = bloch_to_json(bloch_from_density(rho));
        o.doc["p_table"] = table_to_json(table);
        Json marginals = Json::array();
        for (const auto &m : report.marginals) {
            marginals.push_back(
                {{"axis", std::string(1, axis_name(m.axis))},
                 {"sign", m.sign},
                 {"re", m.value.real()},
                 {"im", m.value.imag()}});
        }
        o.doc["marginals"] = marginals;
        o.doc["w_axes"] = triple_to_json(measure_axes(rho));
        o.doc["admissibility"] = admissibility_to_json(report);
        if (!report.passed()) {
            o.code = kExitAdmissibility;
            o.message = "quasiprobability table failed admissibility";
        }
    } catch (const AdmissibilityError &e) {
        o.doc["error"] = error_json(e.what(), e.report());
        o.code = kExitAdmissibility;
        o.message = e.what();
    }
    return o;
}

struct WRequest {
    std::string state;
    std::optional<double> theta;
    std::optional<double> phi;
    double psi = 0;
    int grid = 0;
};

Outcome cmd_w(const WRequest &req, const GlobalOptions &g) {
    StateSpec spec = StateSpec::parse(req.state);
    if (req.grid == 0 && !(req.theta && req.phi)) {
        throw UsageError("w needs either --grid or both --theta and --phi");
    }
    if (req.grid != 0 && (req.theta || req.phi)) {
        throw UsageError("--grid cannot be combined with --theta/--phi");
    }
    Outcome o;
    o.doc = header("w", g.tol);
    o.doc["state"] = spec.to_json();
    std::optional<DensityMatrix> state;
    try {
        state = spec.density(g.tol);
    } catch (const AdmissibilityError &e) {
        o.doc["error"] = error_json(e.what(), e.report());
        o.code = kExitAdmissibility;
        o.message = e.what();
        return o;
    }
    const DensityMatrix &rho = *state;
    o.doc["rho"] = density_json(rho.matrix());
    o.doc["twice_j"] = 1;

    std::vector<Tomogram> samples;
    if (req.grid > 0) {
        QuadratureGrid grid(req.grid, req.grid, 1);
        o.doc["grid"] = {{"n_theta", req.grid}, {"n_phi", req.grid}};
        // Ascending theta means descending cos(theta).
        for (int t = grid.n_theta() - 1; t >= 0; t--) {
            for (int p = 0; p < grid.n_phi(); p++) {
                samples.push_back(w_value(rho, Direction{grid.theta(t), grid.phi(p)}));
            }
        }
    } else {
        o.doc["requested_direction"] = {{"theta", *req.theta}, {"phi", *req.phi}, {"psi", req.psi}};
        samples.push_back(w_value(rho, EulerAngles{*req.phi, *req.theta, req.psi}));
    }

    Json records = Json::array();
    std::ostringstream csv;
    csv << "theta,phi,w_plus,w_minus\n";
    for (const auto &s : samples) {
        records.push_back(
            {{"theta", s.direction.theta}, {"phi", s.direction.phi}, {"w_plus", s.w_plus}, {"w_minus", s.w_minus}});
        csv << format_17(s.direction.theta) << ',' << format_17(s.direction.phi) << ',' << format_17(s.w_plus) << ','
            << format_17(s.w_minus) << '\n';
    }
    o.doc["w_samples"] = records;
    if (g.format == "csv") {
        o.text = csv.str();
    }
    return o;
}

/// Samples from a `w --grid` document, looked up by node.
class SampledTomogram {
   public:
    SampledTomogram(const Json &records, HalfInteger spin) : dim_(spin.twice() + 1) {
        if (!records.is_array() || records.empty()) {
            throw UsageError("w_samples must be a non-empty array");
        }
        for (const auto &r : records) {
            double theta = number(r, "theta");
            double phi = number(r, "phi");
            std::vector<double> w;
            if (r.contains("w")) {
                if (!r["w"].is_array()) {
                    throw UsageError("w_samples[].w must be an array");
                }
                for (const auto &v : r["w"]) {
                    if (!v.is_number()) {
                        throw UsageError("w_samples[].w entries must be numbers");
                    }
                    w.push_back(v.get<double>());
                }
            } else {
                w = {number(r, "w_plus"), number(r, "w_minus")};
            }
            if (static_cast<int>(w.size()) != dim_) {
                throw UsageError("w_samples record has " + std::to_string(w.size()) + " values, spin " + spin.str() +
                                 " needs " + std::to_string(dim_));
            }
            add_unique(thetas_, theta);
            add_unique(phis_, phi);
            samples_.push_back({theta, phi, w});
        }
        std::sort(thetas_.begin(), thetas_.end());
        std::sort(phis_.begin(), phis_.end());
        if (thetas_.size() * phis_.size() != samples_.size()) {
            throw UsageError("w_samples must form a complete theta x phi product grid");
        }
        // Must be the Gauss-Legendre x uniform layout the quadrature uses.
        QuadratureGrid grid = this->grid();
        for (int t = 0; t < grid.n_theta(); t++) {
            if (find(thetas_, grid.theta(t)) < 0) {
                throw UsageError("w_samples theta values are not Gauss-Legendre nodes in cos(theta)");
            }
        }
        for (int p = 0; p < grid.n_phi(); p++) {
            if (find(phis_, grid.phi(p)) < 0) {
                throw UsageError("w_samples phi values are not uniformly spaced from 0");
            }
        }
    }

    QuadratureGrid grid() const {
        return QuadratureGrid(static_cast<int>(thetas_.size()), static_cast<int>(phis_.size()),
                              static_cast<int>(phis_.size()));
    }

    std::vector<double> operator()(double theta, double phi) const {
        for (const auto &s : samples_) {
            if (std::abs(s.theta - theta) <= kMatch && std::abs(s.phi - phi) <= kMatch) {
                return s.w;
            }
        }
        throw UsageError("no tomogram sample at a quadrature node");
    }

   private:
    static constexpr double kMatch = 1e-9;
    struct Sample {
        double theta;
        double phi;
        std::vector<double> w;
    };

    static int find(const std::vector<double> &xs, double x) {
        for (std::size_t k = 0; k < xs.size(); k++) {
            if (std::abs(xs[k] - x) <= kMatch) {
                return static_cast<int>(k);
            }
        }
        return -1;
    }
    static void add_unique(std::vector<double> &xs, double x) {
        if (find(xs, x) < 0) {
            xs.push_back(x);
        }
    }

    int dim_;
    std::vector<double> thetas_;
    std::vector<double> phis_;
    std::vector<Sample> samples_;
};

HalfInteger spin_from_json(const Json &j, HalfInteger fallback) {
    if (j.contains("twice_j")) {
        int twice = integer(j, "twice_j");
        if (twice < 0 || twice > 20) {
            throw UsageError("twice_j must be between 0 and 20");
        }
        return HalfInteger::from_twice(twice);
    }
    if (j.contains("j")) {
        try {
            HalfInteger spin = j["j"].is_string() ? HalfInteger::parse(j["j"].get<std::string>())
                                                  : HalfInteger::from_double(number(j, "j"));
            if (spin.twice() < 0 || spin.twice() > 20) {
                throw UsageError("j must be between 0 and 10");
            }
            return spin;
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }
    return fallback;
}

Outcome reconstruct_integral(const Json &input, SignConvention signs, const GlobalOptions &g, Outcome o) {
    HalfInteger spin;
    std::optional<QuadratureGrid> grid;
    TomogramVectorFunction w;
    std::optional<Eigen::MatrixXcd> reference;

    if (input.contains("w_integral")) {
        const Json &spec = input["w_integral"];
        if (!spec.is_object()) {
            throw UsageError("w_integral must be an object");
        }
        spin = spin_from_json(spec, kHalf);
        int oversample = spec.contains("oversample") ? integer(spec, "oversample") : 2;
        if (oversample < 1) {
            throw UsageError("oversample must be at least 1");
        }
        grid = build_quadrature(spin, oversample);
        std::optional<DensityMatrixJ> source;
        try {
            if (spec.contains("generator")) {
                if (!spec["generator"].is_string()) {
                    throw UsageError("generator must be a state string");
                }
                if (spin != kHalf) {
                    throw UsageError("state generators describe spin 1/2; use rho_j for other spins");
                }
                StateSpec state = StateSpec::parse(spec["generator"].get<std::string>());
                o.doc["state"] = state.to_json();
                source = to_spin_j(state.density(g.tol));
            } else if (spec.contains("rho_j")) {
                source = DensityMatrixJ(spin, matrix_from_json(spec["rho_j"]), g.tol);
            } else {
                throw UsageError("w_integral needs a generator or rho_j");
            }
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
        reference = source->matrix();
        w = tomogram_of(*source);
    } else if (input.contains("w_samples")) {
        HalfInteger fallback = kHalf;
        if (!input["w_samples"].empty() && input["w_samples"][0].contains("w") &&
            input["w_samples"][0]["w"].is_array()) {
            fallback = HalfInteger::from_twice(static_cast<int>(input["w_samples"][0]["w"].size()) - 1);
        }
        spin = spin_from_json(input, fallback);
        auto sampled = std::make_shared<SampledTomogram>(input["w_samples"], spin);
        grid = sampled->grid();
        w = [sampled](double theta, double phi) { return (*sampled)(theta, phi); };
    } else {
        throw UsageError("from-w-integral input needs a w_integral object or w_samples");
    }

    Json meta;
    meta["twice_j"] = spin.twice();
    meta["grid"] = {{"n_theta", grid->n_theta()}, {"n_phi", grid->n_phi()}, {"n_psi", grid->n_psi()}};
    meta["sign_convention"] = sign_convention_name(signs);
    try {
        Reconstruction r = TomogramInverter(spin, *grid, {g.tol, signs}).reconstruct(w);
        meta["max_normalization_deviation"] = r.max_normalization_deviation;
        if (reference) {
            meta["reference_deviation"] = (r.matrix - *reference).cwiseAbs().maxCoeff();
        }
        o.doc["reconstruction"] = meta;
        o.doc["rho"] = density_json(spin, r.matrix);
        o.doc["validation"] = validation_to_json(r.validation);
        if (!r.validation.passed()) {
            o.code = kExitAdmissibility;
            o.message = "reconstructed matrix is not a density matrix (" + r.validation.describe() + ")";
        }
    } catch (const TomogramError &e) {
        o.doc["reconstruction"] = meta;
        o.doc["error"] = error_json(e.what());
        o.code = kExitAdmissibility;
        o.message = e.what();
    }
    return o;
}

Outcome cmd_reconstruct(const std::string &mode, const std::string &path, SignConvention signs,
                        const GlobalOptions &g) {
    Json input = read_document(path);
    Outcome o;
    o.doc = header("reconstruct", g.tol);
    o.doc["mode"] = mode;

    if (mode == "from-p") {
        if (!input.contains("p_table")) {
            throw UsageError("from-p input needs a p_table");
        }
        QuasiProbTable table = table_from_json(input["p_table"]);
        o.doc["p_table"] = table_to_json(table);
        AdmissibilityReport report = check_admissibility(table, g.tol);
        o.doc["admissibility"] = admissibility_to_json(report);
        Matrix2 m = raw_density_from_p(table);
        o.doc["rho"] = density_json(m);
        o.doc["validation"] = validation_to_json(report.reconstructed);
        try {
            (void)density_from_p(table, g.tol);
        } catch (const AdmissibilityError &e) {
            o.doc["error"] = error_json(e.what(), e.report());
            o.code = kExitAdmissibility;
            o.message = e.what();
        }
        return o;
    }
    if (mode == "from-w-axes") {
        if (!input.contains("w_axes")) {
            throw UsageError("from-w-axes input needs w_axes");
        }
        AxisTriple triple = triple_from_json(input["w_axes"]);
        o.doc["w_axes"] = triple_to_json(triple);
        Matrix2 m = raw_density_from_w_axes(triple);
        ValidationReport report = validate_density(m, g.tol);
        o.doc["rho"] = density_json(m);
        o.doc["validation"] = validation_to_json(report);
        try {
            (void)density_from_w_axes(triple, g.tol);
        } catch (const AdmissibilityError &e) {
            o.doc["error"] = error_json(e.what(), e.report());
            o.code = kExitAdmissibility;
            o.message = e.what();
        }
        return o;
    }
    if (mode == "from-w-integral") {
        return reconstruct_integral(input, signs, g, std::move(o));
    }
    throw UsageError("unknown reconstruct mode '" + mode + "'");
}

Outcome cmd_verify(const std::string &path, const GlobalOptions &g) {
    Json input = read_document(path);
    bool has_table = input.contains("p_table");
    bool has_triple = input.contains("w_axes");
    if (!has_table && !has_triple) {
        throw UsageError("verify input needs a p_table, w_axes, or both");
    }
    Outcome o;
    o.doc = header("verify", g.tol);
    bool passed = true;
    Json checks;
    std::optional<QuasiProbTable> table;
    std::optional<AxisTriple> triple;
    if (has_table) {
        table = table_from_json(input["p_table"]);
        AdmissibilityReport report = check_admissibility(*table, g.tol);
        checks["p_table"] = admissibility_to_json(report);
        passed = passed && report.passed();
    }
    if (has_triple) {
        triple = triple_from_json(input["w_axes"]);
        ValidationReport report = validate_density(raw_density_from_w_axes(*triple), g.tol);
        checks["w_axes"] = {{"passed", report.passed()}, {"validation", validation_to_json(report)}};
        passed = passed && report.passed();
    }
    if (table && triple) {
        QuasiProbTable from_w = p_from_w_unchecked(*triple);
        Json deviation = Json::array();
        double max_dev = 0;
        for (std::size_t k = 0; k < QuasiProbTable::kSize; k++) {
            double d = std::abs(from_w[k] - (*table)[k]);
            deviation.push_back(d);
            max_dev = std::max(max_dev, d);
        }
        bool ok = max_dev <= g.tol;
        checks["consistency"] = {{"passed", ok}, {"max_deviation", max_dev}, {"deviation", deviation}};
        passed = passed && ok;
    }
    o.doc["checks"] = checks;
    o.doc["passed"] = passed;
    if (!passed) {
        o.code = kExitAdmissibility;
        o.message = "verification failed";
    }
    return o;
}

Outcome cmd_sweep(int trials, const GlobalOptions &g) {
    if (trials < 1) {
        throw UsageError("--trials must be at least 1");
    }
    BallSampler sampler(g.seed);
    double bloch_round_trip = 0;
    double p_round_trip = 0;
    double oracle = 0;
    double w_axes_round_trip = 0;
    double radon = 0;
    double w_bloch = 0;
    double marginal_imag = 0;
    double marginal_sum = 0;
    double p_from_w_sum = 0;
    for (int t = 0; t < trials; t++) {
        BlochVector b = sampler.next_bloch();
        DensityMatrix rho = density_from_bloch(b);
        BlochVector back = bloch_from_density(rho);
        bloch_round_trip = std::max({bloch_round_trip, std::abs(back.x - b.x), std::abs(back.y - b.y),
                                     std::abs(back.z - b.z)});

        QuasiProbTable table = p_from_density(rho);
        p_round_trip = std::max(p_round_trip, density_from_p(table).matrix().max_abs_diff(rho.matrix()));
        oracle = std::max(oracle, p_oracle(rho).max_abs_diff(table));
        for (Axis axis : {Axis::X, Axis::Y, Axis::Z}) {
            Complex plus = marginal(table, axis, 1);
            Complex minus = marginal(table, axis, -1);
            marginal_imag = std::max({marginal_imag, std::abs(plus.imag()), std::abs(minus.imag())});
            marginal_sum = std::max(marginal_sum, std::abs(plus + minus - 1.0));
        }

        AxisTriple triple = measure_axes(rho);
        w_axes_round_trip =
            std::max(w_axes_round_trip, density_from_w_axes(triple).matrix().max_abs_diff(rho.matrix()));
        radon = std::max(radon, verify_radon_consistency(rho).max_deviation);
        p_from_w_sum = std::max(p_from_w_sum, std::abs(p_from_w_unchecked(triple).sum() - 1.0));

        Direction d = sampler.next_direction();
        w_bloch = std::max(w_bloch, std::abs(w_value(rho, d).w_plus - w_from_bloch(b, d).w_plus));
    }

    Json devs;
    devs["bloch_round_trip"] = bloch_round_trip;
    devs["p_round_trip"] = p_round_trip;
    devs["oracle_equivalence"] = oracle;
    devs["marginal_imaginary"] = marginal_imag;
    devs["marginal_normalization"] = marginal_sum;
    devs["w_axes_round_trip"] = w_axes_round_trip;
    devs["radon_consistency"] = radon;
    devs["p_from_w_total"] = p_from_w_sum;
    devs["w_bloch_consistency"] = w_bloch;
    bool passed = true;
    for (const auto &[key, value] : devs.items()) {
        passed = passed && value.get<double>() <= g.tol;
    }

    Outcome o;
    o.doc = header("sweep", g.tol);
    o.doc["sweep"] = {{"trials", trials}, {"seed", g.seed}, {"max_deviations", devs}};
    o.doc["passed"] = passed;
    if (!passed) {
        o.code = kExitAdmissibility;
        o.message = "sweep deviations exceed tolerance";
    }
    return o;
}

}  // namespace

StateSpec StateSpec::parse(const std::string &text) {
    StateSpec s;
    auto eq = text.find('=');
    if (eq == std::string::npos) {
        if (named_states().count(text) == 0) {
            throw UsageError("unknown state '" + text + "' (named states: up_z, up_x, up_y, unpolarized)");
        }
        s.kind = Kind::kNamed;
        s.name = text;
        return s;
    }
    std::string key = text.substr(0, eq);
    std::string rest = text.substr(eq + 1);
    if (key == "bloch" || key == "w_axes") {
        auto v = parse_list(rest, 3, key);
        s.kind = key == "bloch" ? Kind::kBloch : Kind::kWAxes;
        s.values = {v[0], v[1], v[2]};
        return s;
    }
    if (key == "rho") {
        auto v = parse_list(rest, 8, key);
        s.kind = Kind::kRho;
        s.rho = Matrix2({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
        return s;
    }
    throw UsageError("unknown state kind '" + key + "' (use bloch=, rho= or w_axes=)");
}

DensityMatrix StateSpec::density(double tol) const {
    switch (kind) {
        case Kind::kNamed:
            return density_from_bloch(named_states().at(name), tol);
        case Kind::kBloch:
            return density_from_bloch({values[0], values[1], values[2]}, tol);
        case Kind::kRho:
            return DensityMatrix(rho, tol);
        case Kind::kWAxes:
            return density_from_w_axes({values[0], values[1], values[2]}, tol);
    }
    throw std::logic_error("unknown state kind");
}

Json StateSpec::to_json() const {
    Json j;
    switch (kind) {
        case Kind::kNamed:
            j["kind"] = "named";
            j["name"] = name;
            break;
        case Kind::kBloch:
            j["kind"] = "bloch";
            j["bloch"] = Json::array({values[0], values[1], values[2]});
            break;
        case Kind::kRho:
            j["kind"] = "rho";
            j["rho"] = matrix_to_json(rho);
            break;
        case Kind::kWAxes:
            j["kind"] = "w_axes";
            j["w_axes"] = triple_to_json({values[0], values[1], values[2]});
            break;
    }
    return j;
}

Json complex_to_json(Complex z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

Complex complex_from_json(const Json &j) {
    return {number(j, "re"), number(j, "im")};
}

Json matrix_to_json(const Matrix2 &m) {
    return Json::array({Json::array({complex_to_json(m(0, 0)), complex_to_json(m(0, 1))}),
                        Json::array({complex_to_json(m(1, 0)), complex_to_json(m(1, 1))})});
}

Json matrix_to_json(const Eigen::MatrixXcd &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw UsageError("matrix must be a non-empty array of rows");
    }
    const auto n = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; r++) {
        const Json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw UsageError("matrix must be square");
        }
        for (Eigen::Index c = 0; c < n; c++) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

Matrix2 matrix2_from_json(const Json &j) {
    Eigen::MatrixXcd m = matrix_from_json(j);
    if (m.rows() != 2) {
        throw UsageError("expected a 2x2 matrix");
    }
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

Json table_to_json(const QuasiProbTable &t) {
    Json records = Json::array();
    for (std::size_t k = 0; k < QuasiProbTable::kSize; k++) {
        VertexIndex v = QuasiProbTable::vertex(k);
        records.push_back({{"c", v.c}, {"b", v.b}, {"a", v.a}, {"re", t[k].real()}, {"im", t[k].imag()}});
    }
    return records;
}

QuasiProbTable table_from_json(const Json &j) {
    if (!j.is_array() || j.size() != QuasiProbTable::kSize) {
        throw UsageError("p_table must be an array of 8 records");
    }
    QuasiProbTable t;
    std::array<bool, QuasiProbTable::kSize> seen{};
    for (const auto &r : j) {
        std::size_t k = 0;
        try {
            k = QuasiProbTable::index(integer(r, "c"), integer(r, "b"), integer(r, "a"));
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("p_table: ") + e.what());
        }
        if (seen[k]) {
            throw UsageError("p_table lists a vertex twice");
        }
        seen[k] = true;
        t[k] = {number(r, "re"), number(r, "im")};
    }
    return t;
}

Json triple_to_json(const AxisTriple &t) {
    return {{"wx_plus", t.wx_plus}, {"wy_plus", t.wy_plus}, {"wz_plus", t.wz_plus}};
}

AxisTriple triple_from_json(const Json &j) {
    return {number(j, "wx_plus"), number(j, "wy_plus"), number(j, "wz_plus")};
}

Json validation_to_json(const ValidationReport &r) {
    return {
        {"passed", r.passed()},
        {"hermiticity_deviation", r.hermiticity_deviation},
        {"trace_deviation", r.trace_deviation},
        {"min_eigenvalue", r.min_eigenvalue},
        {"determinant", r.determinant},
    };
}

Json validation_to_json(const ValidationReportJ &r) {
    return {
        {"passed", r.passed()},
        {"hermiticity_deviation", r.hermiticity_deviation},
        {"trace_deviation", r.trace_deviation},
        {"min_eigenvalue", r.min_eigenvalue},
    };
}

Json admissibility_to_json(const AdmissibilityReport &r) {
    Json marginals = Json::array();
    for (const auto &m : r.marginals) {
        marginals.push_back({{"axis", std::string(1, axis_name(m.axis))},
                             {"sign", m.sign},
                             {"imaginary_part", m.value.imag()},
                             {"range_violation", m.range_violation}});
    }
    Json redundancy = Json::array();
    for (double d : r.redundancy_deviation) {
        redundancy.push_back(d);
    }
    return {
        {"passed", r.passed()},
        {"total_sum_deviation", r.total_sum_deviation},
        {"marginals", marginals},
        {"reconstructed", validation_to_json(r.reconstructed)},
        {"redundancy_deviation", redundancy},
        {"max_redundancy_deviation", r.max_redundancy_deviation},
        {"violations", r.violations()},
    };
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Spin-1/2 quasiprobability and tomographic probability tool", "spinq"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--tol", g.tol, "Validation tolerance")->check(CLI::PositiveNumber);
    app.add_option("--output", g.output, "Write the document to this path instead of stdout");
    app.add_option("--format", g.format, "Output format (csv only for w)")->check(CLI::IsMember({"doc", "csv"}));
    app.add_option("--seed", g.seed, "Random seed for sweep");

    std::string state;
    auto *p_table = app.add_subcommand("p-table", "Quasiprobability table p(c,b,a) of a state");
    p_table->add_option("--state", state, "up_z | up_x | up_y | unpolarized | bloch=.. | rho=.. | w_axes=..")
        ->required();

    WRequest wreq;
    auto *w = app.add_subcommand("w", "Tomographic probabilities w(+-1/2, u)");
    w->add_option("--state", wreq.state, "State specification")->required();
    w->add_option("--theta", wreq.theta, "Polar angle (radians)");
    w->add_option("--phi", wreq.phi, "Azimuthal angle (radians)");
    w->add_option("--psi", wreq.psi, "Third Euler angle (radians)");
    w->add_option("--grid", wreq.grid, "n x n grid: Gauss-Legendre theta, uniform phi")->check(CLI::PositiveNumber);

    std::string mode;
    std::string input;
    std::string signs = "integer-exponent";
    auto *rec = app.add_subcommand("reconstruct", "Density matrix from a p table or tomogram");
    rec->add_option("--mode", mode, "from-p | from-w-axes | from-w-integral")
        ->required()
        ->check(CLI::IsMember({"from-p", "from-w-axes", "from-w-integral"}));
    rec->add_option("--input", input, "Input document")->required();
    rec->add_option("--signs", signs, "Half-integer sign convention for from-w-integral")
        ->check(CLI::IsMember({"integer-exponent", "complex-exponential"}));

    std::string verify_input;
    auto *verify = app.add_subcommand("verify", "Check admissibility and p/w consistency");
    verify->add_option("--input", verify_input, "Input document")->required();

    int trials = 1000;
    auto *sweep = app.add_subcommand("sweep", "Seeded property sweep over random states");
    sweep->add_option("--trials", trials, "Number of random states");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    Outcome o;
    try {
        if (g.format == "csv" && !w->parsed()) {
            throw UsageError("--format csv is only available for w");
        }
        if (p_table->parsed()) {
            o = cmd_p_table(state, g);
        } else if (w->parsed()) {
            o = cmd_w(wreq, g);
        } else if (rec->parsed()) {
            SignConvention sc = signs == "complex-exponential" ? SignConvention::kComplexExponential
                                                               : SignConvention::kIntegerExponent;
            o = cmd_reconstruct(mode, input, sc, g);
        } else if (verify->parsed()) {
            o = cmd_verify(verify_input, g);
        } else {
            o = cmd_sweep(trials, g);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const AdmissibilityError &e) {
        err << "error: " << e.what() << "\n";
        // Commands that fail before building a document still report the state.
        Json doc = header(app.get_subcommands().front()->get_name(), g.tol);
        doc["error"] = error_json(e.what(), e.report());
        o.doc = doc;
        o.code = kExitAdmissibility;
    }

    std::string payload = o.text.empty() ? o.doc.dump(2) + "\n" : o.text;
    if (!g.output.empty()) {
        std::ofstream file(g.output, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << g.output << "'\n";
            return kExitUsage;
        }
        file << payload;
    } else {
        out << payload;
    }
    if (!o.message.empty()) {
        err << "error: " << o.message << "\n";
    }
    return o.code;
}

}  // namespace spinq::cli
