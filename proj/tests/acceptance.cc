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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "golden_values.h"
#include "spinq/general_inversion.h"
#include "spinq/quasiprob.h"
#include "spinq/radon_link.h"
#include "spinq/sampling.h"
#include "spinq/tomography.h"
#include "test_util.h"

using namespace spinq;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSweep = 1000;
constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
    void bound(double value, double limit, const std::string &what) {
        std::ostringstream s;
        s.precision(3);
        s << what << " = " << value << " (limit " << limit << ")";
        require(value <= limit, s.str());
        if (ok) {
            detail = detail.empty() ? s.str() : detail + "; " + s.str();
        }
    }
};

std::vector<DensityMatrix> sweep_states() {
    BallSampler sampler(kSeed);
    std::vector<DensityMatrix> states;
    for (int k = 0; k < kSweep; k++) {
        states.push_back(sampler.next_state());
    }
    return states;
}

Outcome golden_tables() {
    Outcome o;
    double worst = 0;
    for (const auto &ex : golden::named_examples()) {
        worst = std::max(worst, p_from_density(DensityMatrix(ex.rho)).max_abs_diff(ex.table));
    }
    o.bound(worst, 1e-14, "max entry deviation");
    return o;
}

Outcome overlap_table() {
    Outcome o;
    double worst = 0;
    for (const auto &row : golden::kTripleOverlaps) {
        worst = std::max(worst, std::abs(overlap_triple(row.cx, row.by, row.az, row.az2) - row.value));
    }
    o.bound(worst, 1e-15, "max overlap deviation");
    return o;
}

Outcome w_formulas() {
    Outcome o;
    const Complex i{0, 1};
    struct Case {
        DensityMatrix rho;
        std::function<double(const EulerAngles &)> w_plus;
    };
    std::vector<Case> cases{
        {DensityMatrix({1, 0, 0, 0}), [](const EulerAngles &u) { return 0.5 * (1 + std::cos(u.theta)); }},
        {DensityMatrix({0.5, 0.5, 0.5, 0.5}),
         [](const EulerAngles &u) { return 0.5 * (1 + std::sin(u.theta) * std::cos(u.phi)); }},
        {DensityMatrix({0.5, -0.5 * i, 0.5 * i, 0.5}),
         [](const EulerAngles &u) { return 0.5 * (1 + std::sin(u.theta) * std::sin(u.phi)); }},
        {DensityMatrix({0.5, 0, 0, 0.5}), [](const EulerAngles &) { return 0.5; }},
    };
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    double worst = 0;
    double psi_worst = 0;
    for (int t = 0; t < 100; t++) {
        EulerAngles u = testutil::random_euler(rng);
        for (const auto &c : cases) {
            Tomogram w = w_value(c.rho, u);
            double want = c.w_plus(u);
            worst = std::max({worst, std::abs(w.w_plus - want), std::abs(w.w_minus - (1 - want))});
            EulerAngles v = u;
            v.psi = angle(rng);
            psi_worst = std::max(psi_worst, std::abs(w_value(c.rho, v).w_plus - w.w_plus));
        }
    }
    o.bound(worst, 1e-13, "max closed-form deviation");
    o.bound(psi_worst, 1e-14, "max psi dependence");
    return o;
}

Outcome round_trips(const std::vector<DensityMatrix> &states) {
    Outcome o;
    double p_worst = 0;
    double w_worst = 0;
    for (const auto &rho : states) {
        p_worst = std::max(p_worst, density_from_p(p_from_density(rho)).matrix().max_abs_diff(rho.matrix()));
        AxisTriple t{w_value(rho, axis_direction(Axis::X)).w_plus, w_value(rho, axis_direction(Axis::Y)).w_plus,
                     w_value(rho, axis_direction(Axis::Z)).w_plus};
        w_worst = std::max(w_worst, density_from_w_axes(t).matrix().max_abs_diff(rho.matrix()));
    }
    o.bound(p_worst, 1e-13, "p round trip");
    o.bound(w_worst, 1e-13, "w-axes round trip");
    return o;
}

Outcome radon_diagram(const std::vector<DensityMatrix> &states) {
    Outcome o;
    double worst = 0;
    for (const auto &rho : states) {
        worst = std::max(worst, p_from_w(measure_axes(rho)).max_abs_diff(p_from_density(rho)));
    }
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> wide(-2, 3);
    double sum_worst = 0;
    for (int t = 0; t < kSweep; t++) {
        AxisTriple arbitrary{wide(rng), wide(rng), wide(rng)};
        sum_worst = std::max(sum_worst, std::abs(p_from_w_unchecked(arbitrary).sum() - 1.0));
    }
    o.bound(worst, 1e-13, "p_from_w vs p_from_density");
    o.bound(sum_worst, 1e-14, "total of p_from_w on arbitrary triples");
    return o;
}

Outcome oracle_equivalence(const std::vector<DensityMatrix> &states) {
    Outcome o;
    double worst = 0;
    for (const auto &rho : states) {
        worst = std::max(worst, p_oracle(rho).max_abs_diff(p_from_density(rho)));
    }
    o.bound(worst, 1e-13, "p_oracle vs p_from_density");
    return o;
}

Outcome general_recovery() {
    Outcome o;
    const HalfInteger one = HalfInteger::from_int(1);
    double worst_half = 0;
    double worst_one = 0;
    double worst_doubling = 0;
    TomogramInverter half(kHalf, build_quadrature(kHalf));
    TomogramInverter half_fine(kHalf, build_quadrature(kHalf, 4));
    TomogramInverter spin1(one, build_quadrature(one));
    TomogramInverter spin1_fine(one, build_quadrature(one, 4));

    BallSampler sampler(kSeed);
    std::mt19937_64 rng(kSeed);
    for (int t = 0; t < 100; t++) {
        DensityMatrixJ rho = to_spin_j(sampler.next_state());
        auto w = tomogram_of(rho);
        Eigen::MatrixXcd m = half.reconstruct(w).matrix;
        worst_half = std::max(worst_half, (m - rho.matrix()).cwiseAbs().maxCoeff());
        worst_doubling = std::max(worst_doubling, (m - half_fine.reconstruct(w).matrix).cwiseAbs().maxCoeff());

        DensityMatrixJ rho1 = testutil::random_state_j(one, rng);
        auto w1 = tomogram_of(rho1);
        Eigen::MatrixXcd m1 = spin1.reconstruct(w1).matrix;
        worst_one = std::max(worst_one, (m1 - rho1.matrix()).cwiseAbs().maxCoeff());
        worst_doubling = std::max(worst_doubling, (m1 - spin1_fine.reconstruct(w1).matrix).cwiseAbs().maxCoeff());
    }
    o.bound(worst_half, 1e-10, "j=1/2 recovery");
    o.bound(worst_one, 1e-9, "j=1 recovery");
    o.bound(worst_doubling, 1e-12, "node doubling change");
    return o;
}

Outcome special_functions() {
    Outcome o;
    auto H = HalfInteger::from_twice;
    double ortho = 0;
    double sym = 0;
    for (int tj1 = 0; tj1 <= 3; tj1++) {
        for (int tj2 = 0; tj2 <= 3; tj2++) {
            for (int tj3 = std::abs(tj1 - tj2); tj3 <= tj1 + tj2; tj3 += 2) {
                for (int tj3b = std::abs(tj1 - tj2); tj3b <= tj1 + tj2; tj3b += 2) {
                    for (int tm3 = -tj3; tm3 <= tj3; tm3 += 2) {
                        for (int tm3b = -tj3b; tm3b <= tj3b; tm3b += 2) {
                            double s = 0;
                            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                                for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                                    s += (tj3 + 1) * wigner_3j(H(tj1), H(tj2), H(tj3), H(tm1), H(tm2), H(tm3)) *
                                         wigner_3j(H(tj1), H(tj2), H(tj3b), H(tm1), H(tm2), H(tm3b));
                                }
                            }
                            ortho = std::max(ortho, std::abs(s - ((tj3 == tj3b && tm3 == tm3b) ? 1.0 : 0.0)));
                        }
                    }
                }
            }
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
                    for (int tm1b = -tj1; tm1b <= tj1; tm1b += 2) {
                        for (int tm2b = -tj2; tm2b <= tj2; tm2b += 2) {
                            double s = 0;
                            for (int tj3 = std::abs(tj1 - tj2); tj3 <= tj1 + tj2; tj3 += 2) {
                                for (int tm3 = -tj3; tm3 <= tj3; tm3 += 2) {
                                    s += (tj3 + 1) * wigner_3j(H(tj1), H(tj2), H(tj3), H(tm1), H(tm2), H(tm3)) *
                                         wigner_3j(H(tj1), H(tj2), H(tj3), H(tm1b), H(tm2b), H(tm3));
                                }
                            }
                            ortho = std::max(ortho, std::abs(s - ((tm1 == tm1b && tm2 == tm2b) ? 1.0 : 0.0)));
                        }
                    }
                    for (int tj3 = std::abs(tj1 - tj2); tj3 <= tj1 + tj2; tj3 += 2) {
                        int tm3 = -tm1 - tm2;
                        if (std::abs(tm3) > tj3) {
                            continue;
                        }
                        double v = wigner_3j(H(tj1), H(tj2), H(tj3), H(tm1), H(tm2), H(tm3));
                        double odd = ((tj1 + tj2 + tj3) / 2) % 2 == 0 ? 1 : -1;
                        sym = std::max({sym,
                                        std::abs(wigner_3j(H(tj2), H(tj3), H(tj1), H(tm2), H(tm3), H(tm1)) - v),
                                        std::abs(wigner_3j(H(tj3), H(tj1), H(tj2), H(tm3), H(tm1), H(tm2)) - v),
                                        std::abs(wigner_3j(H(tj2), H(tj1), H(tj3), H(tm2), H(tm1), H(tm3)) - odd * v),
                                        std::abs(wigner_3j(H(tj1), H(tj3), H(tj2), H(tm1), H(tm3), H(tm2)) - odd * v),
                                        std::abs(wigner_3j(H(tj1), H(tj2), H(tj3), H(-tm1), H(-tm2), H(-tm3)) -
                                                 odd * v)});
                    }
                }
            }
        }
    }
    std::mt19937_64 rng(kSeed);
    double d_worst = 0;
    for (int t = 0; t < 100; t++) {
        EulerAngles u = testutil::random_euler(rng);
        Eigen::MatrixXcd d = wigner_D_matrix(kHalf, u);
        Matrix2 expected = rotation_matrix(u);
        for (int r = 0; r < 2; r++) {
            for (int c = 0; c < 2; c++) {
                d_worst = std::max(d_worst, std::abs(d(r, c) - expected(r, c)));
            }
        }
    }
    o.bound(ortho, 1e-12, "3j orthogonality");
    o.bound(sym, 1e-12, "3j symmetry");
    o.bound(d_worst, 1e-14, "wigner_D vs rotation_matrix");
    return o;
}

struct Process {
    int code;
    std::string out;
};

Process run_binary(const std::string &args) {
    std::string cmd = std::string("\"") + SPINQ_BINARY + "\" " + args + " 2>/dev/null";
    Process p{-1, {}};
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return p;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        p.out.append(buf, n);
    }
    int status = pclose(pipe);
    p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return p;
}

Outcome cli_contract() {
    Outcome o;
    for (const auto &ex : golden::named_examples()) {
        std::ifstream in(std::string(SPINQ_GOLDEN_DIR) + "/p_table_" + ex.name + ".json");
        std::stringstream golden;
        golden << in.rdbuf();
        Process first = run_binary("p-table --state " + ex.name);
        Process second = run_binary("p-table --state " + ex.name);
        o.require(first.code == 0, ex.name + ": exit code " + std::to_string(first.code));
        o.require(first.out == second.out, ex.name + ": output differs between runs");
        o.require(first.out == golden.str(), ex.name + ": output differs from golden document");
    }
    struct Expect {
        std::string args;
        int code;
    };
    std::vector<Expect> codes{
        {"p-table --state up_z", 0},
        {"--help", 0},
        {"--seed 1 sweep --trials 50", 0},
        {"w --state up_y --theta 0.3 --phi 0.2", 0},
        {"", 2},
        {"p-table --state nonsense", 2},
        {"p-table --state up_z --unknown-flag", 2},
        {"sweep --trials 0", 2},
        {"reconstruct --mode from-p --input /nonexistent.json", 2},
        {"p-table --state bloch=0.6,0,0", 3},
        {"p-table --state rho=1,0,0.5,0,0.5,0,0,0", 3},
        {"w --state w_axes=1,1,1 --theta 0 --phi 0", 3},
    };
    for (const auto &e : codes) {
        Process p = run_binary(e.args);
        o.require(p.code == e.code,
                  "'" + e.args + "' exited " + std::to_string(p.code) + ", expected " + std::to_string(e.code));
    }
    if (o.ok) {
        o.detail = "4 golden documents byte-stable, " + std::to_string(codes.size()) + " exit codes as expected";
    }
    return o;
}

}  // namespace

int main() {
    using Clock = std::chrono::steady_clock;
    std::vector<DensityMatrix> states = sweep_states();

    struct Criterion {
        int id;
        std::string name;
        double time_limit;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {1, "golden p-tables", 1, golden_tables},
        {2, "eigenket overlap table", 0, overlap_table},
        {3, "golden w formulas", 0, w_formulas},
        {4, "round trips", 5, [&] { return round_trips(states); }},
        {5, "radon commuting diagram", 0, [&] { return radon_diagram(states); }},
        {6, "oracle equivalence", 0, [&] { return oracle_equivalence(states); }},
        {7, "general-formula recovery", 30, general_recovery},
        {8, "special functions", 0, special_functions},
        {9, "CLI contract", 0, cli_contract},
    };

    int failures = 0;
    for (const auto &c : criteria) {
        auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        if (c.time_limit > 0 && seconds >= c.time_limit) {
            o.ok = false;
            o.detail += "; runtime over " + std::to_string(c.time_limit) + " s";
        }
        char timing[32];
        std::snprintf(timing, sizeof(timing), "%.3f s", seconds);
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << ", " << timing
                  << "): " << o.detail << "\n";
        failures += o.ok ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
