// Copyright 2026 The catgate Authors
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

// Cross-layer invariant suite behind `catgate validate`. Sample points come
// from a Weyl sequence so every run checks the same states.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "catgate/errors.h"
#include "catgate/experiment.h"
#include "catgate/fock_ops.h"
#include "catgate/measurement.h"

namespace catgate::cli {

namespace {

constexpr double kPi = std::numbers::pi;

/// Additive recurrence on irrational steps; deterministic and equidistributed.
class Weyl {
  public:
    double next() {
        x_ = std::fmod(x_ + 0.6180339887498949, 1.0);
        y_ = std::fmod(y_ + 0.7548776662466927, 1.0);
        flip_ = !flip_;
        return flip_ ? x_ : y_;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * next(); }
    std::vector<Complex> coefficients(std::size_t n) {
        std::vector<Complex> c(n);
        for (auto &v : c) {
            v = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
        }
        return c;
    }

  private:
    double x_ = 0.5;
    double y_ = 0.25;
    bool flip_ = false;
};

struct Builder {
    GroupResult &group;
    void check(std::string name, double measured, double tolerance) {
        group.checks.push_back({std::move(name), measured, tolerance, measured <= tolerance});
    }
};

void group_solvers(Builder b) {
    Weyl w;
    double phase = 0.0, sum = 0.0, prod = 0.0, had = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double a = w.uniform(0.5, 2.0), phi = w.uniform(0.05, 2 * kPi - 0.05);
        phase = std::max(phase, solve_phase_gamma(a, phi).residual());
        const auto c = solve_cphase_gammas(a, phi);
        sum = std::max(sum, c.sum_residual());
        prod = std::max(prod, c.product_residual());
        HadamardRequest req;
        req.alpha = a;
        req.beta = 2 * a;
        req.gamma_weight = w.uniform(0.05, 0.5);
        had = std::max(had, solve_hadamard(req).condition_residual());
    }
    b.check("phase_residual", phase, 1e-12);
    b.check("cphase_sum_residual", sum, 1e-12);
    b.check("cphase_product_residual", prod, 1e-12);
    b.check("hadamard_condition_residual", had, 1e-10);
}

void group_ideal(Builder b) {
    Weyl w;
    double phase = 0.0, ratio = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double a = w.uniform(0.5, 2.0), phi = w.uniform(0.05, 2 * kPi - 0.05);
        auto c = w.coefficients(2);
        phase = std::max(phase, 1.0 - run_ideal_phase(CoherentQubit{a, c[0], c[1]}, phi).fidelity);
        const CoherentRegister in(a, w.coefficients(4));
        const auto p = solve_cphase_gammas(a, phi);
        const CoherentRegister out = ideal_cphase(in, p.gamma1, p.gamma2).state;
        const CoherentRegister target = cphase_target(in, phi);
        std::size_t ref = 0;
        for (std::size_t i = 1; i < 4; ++i) {
            ref = std::abs(target.coeff(i)) > std::abs(target.coeff(ref)) ? i : ref;
        }
        const double scale = std::abs(out.coeff(ref) * target.coeff(ref));
        for (std::size_t i = 0; i < 4; ++i) {
            ratio = std::max(ratio,
                             std::abs(out.coeff(i) * target.coeff(ref) - target.coeff(i) * out.coeff(ref)) / scale);
        }
    }
    b.check("phase_target_infidelity", phase, 1e-10);
    b.check("cphase_ratio_residual", ratio, 1e-10);
}

void group_analytic_fock(Builder b) {
    Weyl w;
    double phase = 0.0, cphase = 0.0;
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        for (double phi : {0.7, kPi / 2, kPi, 4.0}) {
            auto c = w.coefficients(2);
            const CoherentQubit in{a, c[0], c[1]};
            const auto p = solve_phase_gamma(a, phi);
            const double mu = std::max({a, std::abs(a + p.gamma), std::abs(-a + p.gamma)});
            const std::vector<int> cut{default_cutoff(mu)};
            const auto pipeline = operator_pipeline_phase(to_fock(in, cut), p.gamma);
            phase = std::max(phase, 1.0 - fidelity(to_fock(ideal_phase_gate(in, p.gamma).state, cut), pipeline));
            if (a == 1.5) {
                continue;  // keeps the two-mode part short
            }
            const CoherentRegister reg(a, w.coefficients(4));
            const auto q = solve_cphase_gammas(a, phi);
            const auto cut2 = cphase_signal_cutoffs(a, q.gamma1, q.gamma2);
            const auto pipe2 = operator_pipeline_cphase(to_fock(reg, cut2), q.gamma1, q.gamma2);
            cphase = std::max(cphase,
                              1.0 - fidelity(to_fock(ideal_cphase(reg, q.gamma1, q.gamma2).state, cut2), pipe2));
        }
    }
    b.check("phase_fock_infidelity", phase, 1e-8);
    b.check("cphase_fock_infidelity", cphase, 1e-8);
}

void group_operator(Builder b) {
    Weyl w;
    const std::vector<int> cut{25};
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        Complex g(w.uniform(-1.0, 1.0), w.uniform(-1.0, 1.0));
        if (std::abs(g) > 1.0) {
            g /= std::abs(g);
        }
        CVector amps = CVector::Zero(26);
        for (int n = 0; n <= 3; ++n) {
            amps(n) = Complex(w.uniform(-1.0, 1.0), w.uniform(-1.0, 1.0));
        }
        const PureFockState s(cut, amps);
        const auto lhs = displace(annihilate(displace(s, 0, g), 0), 0, -g);
        const CVector rhs = annihilate(s, 0).amplitudes() + g * s.amplitudes();
        worst = std::max(worst, (lhs.amplitudes() - rhs).cwiseAbs().maxCoeff());
    }
    b.check("displaced_annihilation_deviation", worst, 1e-8);
}

CircuitSpec spec_for(Architecture arch, double phi, double r, DetectorModel det = DetectorModel::Fock1Projection) {
    CircuitSpec s;
    s.architecture = arch;
    s.alpha = 1.0;
    s.phi = phi;
    s.r = r;
    s.detector = det;
    return s;
}

CoherentRegister uniform_input(Architecture arch) {
    const bool two = arch == Architecture::CPhaseFig2 || arch == Architecture::CPhaseFig3;
    return CoherentRegister(1.0, std::vector<Complex>(two ? 4 : 2, 1.0)).normalized();
}

void group_convergence(Builder b) {
    for (Architecture arch : {Architecture::PhaseFig1, Architecture::CPhaseFig2}) {
        for (double phi : {kPi / 2, kPi}) {
            double violation = -1.0, prev = 1.0, last = 1.0;
            for (double r : {0.2, 0.1, 0.05, 0.02}) {
                last = 1.0 - simulate(spec_for(arch, phi, r), uniform_input(arch)).fidelity_vs_ideal;
                if (r != 0.2) {
                    violation = std::max(violation, last - prev);
                }
                prev = last;
            }
            const std::string tag = std::string(architecture_name(arch)) + (phi == kPi ? "_pi" : "_pi/2");
            b.check(tag + "_monotone_violation", violation, 0.0);
            b.check(tag + "_infidelity_at_r0.02", last, 5e-3);
        }
    }
}

void group_detectors(Builder b) {
    for (Architecture arch : {Architecture::PhaseFig1, Architecture::CPhaseFig2}) {
        const double f1 = simulate(spec_for(arch, kPi / 2, 0.01), uniform_input(arch)).fidelity_vs_ideal;
        const double f0 =
            simulate(spec_for(arch, kPi / 2, 0.01, DetectorModel::OnOffPovm), uniform_input(arch)).fidelity_vs_ideal;
        b.check(std::string(architecture_name(arch)) + "_onoff_fock1_gap", std::abs(f1 - f0), 1e-3);
    }
}

void group_architectures(Builder b) {
    const auto in = uniform_input(Architecture::CPhaseFig2);
    const auto two = simulate_cphase_fig2(spec_for(Architecture::CPhaseFig2, kPi, 0.02), in);
    const auto three = simulate_cphase_fig3(spec_for(Architecture::CPhaseFig3, kPi, 0.02), in);
    b.check("fig3_vs_fig2_infidelity", 1.0 - mutual_fidelity(three.output, two.output), 5e-3);
    b.check("fig3_impurity", 1.0 - three.purity, 1e-2);
}

void group_hadamard(Builder b) {
    Weyl w;
    double violation = -1.0;
    for (int k = 0; k < 20; ++k) {
        auto c = w.coefficients(2);
        double prev = 1.0;
        for (double g : {0.4, 0.2, 0.1, 0.05}) {
            HadamardRequest req;
            req.alpha = 1.0;
            req.beta = 2.0;
            req.gamma_weight = g;
            const double infid = 1.0 - run_ideal_hadamard(CoherentQubit{1.0, c[0], c[1]}, solve_hadamard(req)).fidelity;
            if (g != 0.4) {
                violation = std::max(violation, infid - prev);
            }
            prev = infid;
        }
    }
    b.check("approx_monotone_violation", violation, 0.0);
    CircuitSpec s = spec_for(Architecture::HadamardExact, kPi, 0.02);
    s.hadamard.variant = HadamardVariant::ExactHomodyneP;
    const auto rep = simulate_hadamard(s, CoherentQubit{1.0, 0.6, 0.8});
    b.check("exact_infidelity_at_r0.02", 1.0 - rep.fidelity_vs_ideal, 1e-3);
}

const std::vector<std::pair<std::string, std::function<void(Builder)>>> &registry() {
    static const std::vector<std::pair<std::string, std::function<void(Builder)>>> groups = {
        {"solvers", group_solvers},         {"ideal", group_ideal},
        {"analytic_fock", group_analytic_fock}, {"operator", group_operator},
        {"convergence", group_convergence}, {"detectors", group_detectors},
        {"architectures", group_architectures}, {"hadamard", group_hadamard},
    };
    return groups;
}

}  // namespace

bool GroupResult::pass() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.pass; });
}

std::vector<std::string> validation_groups() {
    std::vector<std::string> names;
    for (const auto &g : registry()) {
        names.push_back(g.first);
    }
    return names;
}

std::vector<GroupResult> run_validation(const ValidateArgs &args) {
    const auto known = validation_groups();
    for (const auto &g : args.groups) {
        if (std::find(known.begin(), known.end(), g) == known.end()) {
            std::string all;
            for (const auto &k : known) {
                all += (all.empty() ? "" : ", ") + k;
            }
            throw ConfigError("unknown validation group '" + g + "' (" + all + ")");
        }
    }
    std::vector<GroupResult> results;
    for (const auto &[name, fn] : registry()) {
        if (!args.groups.empty() && std::find(args.groups.begin(), args.groups.end(), name) == args.groups.end()) {
            continue;
        }
        GroupResult res{name, {}, 0.0};
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(Builder{res});
        } catch (const CatgateError &e) {
            res.checks.push_back({std::string("raised ") + e.kind() + ": " + e.what(), 1.0, 0.0, false});
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (args.tolerance) {
            for (auto &c : res.checks) {
                c.tolerance = *args.tolerance;
                c.pass = c.measured <= c.tolerance;
            }
        }
        results.push_back(std::move(res));
    }
    return results;
}

int cmd_validate(const ValidateArgs &args, Streams io) {
    std::vector<GroupResult> results;
    try {
        results = run_validation(args);
    } catch (const CatgateError &e) {
        io.err << "error: " << e.kind() << ": " << e.what() << '\n';
        return exit_code_for_kind(e.kind());
    }
    bool all = true;
    for (const auto &g : results) {
        all = all && g.pass();
        io.out << (g.pass() ? "PASS " : "FAIL ") << g.group << " (" << std::fixed << std::setprecision(2) << g.seconds
               << " s)\n";
        io.out.unsetf(std::ios::floatfield);
        for (const auto &c : g.checks) {
            if (io.quiet && c.pass) {
                continue;
            }
            io.out << "  " << (c.pass ? "ok   " : "FAIL ") << std::left << std::setw(40) << c.name
                   << " measured " << format_number(c.measured) << "  tolerance " << format_number(c.tolerance)
                   << '\n';
        }
    }
    return all ? kExitOk : kExitValidation;
}

}  // namespace catgate::cli
