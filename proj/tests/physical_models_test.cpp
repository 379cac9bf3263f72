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

#include "catgate/physical_models.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "catgate/errors.h"
#include "catgate/fock_ops.h"
#include "test_util.h"

using namespace catgate;
using catgate::testing::random_coefficients;

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<double> kRLadder{0.2, 0.1, 0.05, 0.02};

CircuitSpec make_spec(Architecture arch, double phi, double r,
                      DetectorModel det = DetectorModel::Fock1Projection) {
    CircuitSpec s;
    s.architecture = arch;
    s.alpha = 1.0;
    s.phi = phi;
    s.r = r;
    s.detector = det;
    return s;
}

CoherentRegister basis_register(std::size_t index) {
    std::vector<Complex> c(4, 0.0);
    c[index] = 1.0;
    return CoherentRegister(1.0, c);
}

}  // namespace

// ---------------------------------------------------------------------------
// Phase gate, single-mode subtraction circuit

TEST(phase_fig1, pi_gate_at_small_tap) {
    auto rep = simulate_phase_fig1(make_spec(Architecture::PhaseFig1, kPi, 0.05), CoherentQubit{1.0, 1.0, 1.0});
    EXPECT_GE(rep.fidelity_vs_ideal, 0.999);
    EXPECT_TRUE(rep.output.is_pure());
    // Target is the odd-cat coefficient pattern (1, -1).
    auto odd = to_fock(CoherentQubit{1.0, 1.0, -1.0}, rep.output.cutoffs());
    EXPECT_GE(fidelity(odd, rep.output), 0.999);
}

TEST(phase_fig1, fidelity_rises_as_tap_weakens) {
    double prev = 0.0;
    for (double r : {0.2, 0.1, 0.05}) {
        auto rep = simulate_phase_fig1(make_spec(Architecture::PhaseFig1, kPi / 2, r),
                                       CoherentQubit{1.0, 0.6, Complex(0.2, 0.5)});
        EXPECT_GT(rep.fidelity_vs_ideal, prev) << r;
        prev = rep.fidelity_vs_ideal;
    }
}

TEST(phase_fig1, probability_fidelity_tradeoff) {
    double prev_p = 1.0, prev_f = 0.0;
    for (double r : {0.1, 0.03, 0.01}) {
        auto rep = simulate_phase_fig1(make_spec(Architecture::PhaseFig1, kPi / 2, r), CoherentQubit{1.0, 1.0, 0.5});
        EXPECT_LT(rep.success_probability, prev_p);
        EXPECT_GT(rep.fidelity_vs_ideal, prev_f);
        prev_p = rep.success_probability;
        prev_f = rep.fidelity_vs_ideal;
    }
}

TEST(phase_fig1, success_probability_of_coherent_input) {
    // gamma = 0 at phi = pi: the tap sees |r alpha>, the signal stays coherent.
    const double r = 0.1, a = 1.3;
    const double m = r * r * a * a;
    CircuitSpec s = make_spec(Architecture::PhaseFig1, kPi, r);
    s.alpha = a;
    auto fock1 = simulate_phase_fig1(s, CoherentQubit{a, 1.0, 0.0});
    EXPECT_NEAR(fock1.success_probability, m * std::exp(-m), 1e-12);
    s.detector = DetectorModel::OnOffPovm;
    auto onoff = simulate_phase_fig1(s, CoherentQubit{a, 1.0, 0.0});
    EXPECT_NEAR(onoff.success_probability, 1.0 - std::exp(-m), 1e-12);
    EXPECT_NEAR(onoff.output.trace(), onoff.success_probability, 1e-12);
}

TEST(phase_fig1, rejects_bad_tap) {
    EXPECT_THROW(simulate_phase_fig1(make_spec(Architecture::PhaseFig1, kPi, 0.6), CoherentQubit{1.0, 1.0, 0.0}),
                 ConfigError);
    EXPECT_THROW(simulate_phase_fig1(make_spec(Architecture::PhaseFig1, kPi, 0.0), CoherentQubit{1.0, 1.0, 0.0}),
                 ConfigError);
    EXPECT_THROW(simulate_phase_fig1(make_spec(Architecture::PhaseFig1, 0.0, 0.1), CoherentQubit{1.0, 1.0, 0.0}),
                 DegeneratePhase);
}

TEST(phase_fig1, cutoff_override_too_small) {
    CircuitSpec s = make_spec(Architecture::PhaseFig1, kPi / 2, 0.05);
    s.signal_cutoffs = {4};
    EXPECT_THROW(simulate_phase_fig1(s, CoherentQubit{1.0, 1.0, 0.0}), CutoffTooSmall);
}

// ---------------------------------------------------------------------------
// Controlled phase, Mach-Zehnder circuit

TEST(cphase_fig2, uniform_register_at_pi) {
    auto rep = simulate_cphase_fig2(make_spec(Architecture::CPhaseFig2, kPi, 0.05),
                                    CoherentRegister(1.0, {1.0, 1.0, 1.0, 1.0}));
    EXPECT_GE(rep.fidelity_vs_ideal, 0.995);
    auto target = to_fock(CoherentRegister(1.0, {1.0, 1.0, 1.0, -1.0}), rep.output.cutoffs());
    EXPECT_GE(fidelity(target, rep.output), 0.995);
    EXPECT_GE(rep.success_probability, 0.0);
    EXPECT_LE(rep.success_probability, 1.0);
}

TEST(cphase_fig2, onoff_detector_is_worse_at_large_tap) {
    CoherentRegister in(1.0, {0.5, Complex(0.1, 0.3), -0.4, 0.6});
    auto f1 = simulate_cphase_fig2(make_spec(Architecture::CPhaseFig2, kPi / 2, 0.2), in);
    auto oo = simulate_cphase_fig2(make_spec(Architecture::CPhaseFig2, kPi / 2, 0.2, DetectorModel::OnOffPovm), in);
    EXPECT_LT(oo.fidelity_vs_ideal, f1.fidelity_vs_ideal);
    EXPECT_GT(oo.success_probability, f1.success_probability);
    EXPECT_FALSE(oo.output.is_pure());
}

TEST(cphase_fig2, preserves_computational_basis) {
    for (std::size_t i = 0; i < 4; ++i) {
        auto in = basis_register(i);
        for (double r : {0.05, 0.02}) {
            auto rep = simulate_cphase_fig2(make_spec(Architecture::CPhaseFig2, kPi / 2, r), in);
            EXPECT_GE(fidelity(to_fock(in, rep.output.cutoffs()), rep.output), 1.0 - 5e-3) << i << " " << r;
        }
    }
}

TEST(cphase_fig2, detector_models_converge_at_small_tap) {
    CoherentRegister in(1.0, {0.5, Complex(0.1, 0.3), -0.4, 0.6});
    auto f1 = simulate_cphase_fig2(make_spec(Architecture::CPhaseFig2, kPi, 0.01), in);
    auto oo = simulate_cphase_fig2(make_spec(Architecture::CPhaseFig2, kPi, 0.01, DetectorModel::OnOffPovm), in);
    EXPECT_LE(std::abs(f1.fidelity_vs_ideal - oo.fidelity_vs_ideal), 1e-3);
}

// ---------------------------------------------------------------------------
// Controlled phase, ancilla-displacement circuit

TEST(cphase_fig3, coherent_products_are_eigenstates) {
    for (std::size_t i = 0; i < 4; ++i) {
        auto in = basis_register(i);
        auto rep = simulate_cphase_fig3(make_spec(Architecture::CPhaseFig3, kPi, 0.02), in);
        EXPECT_GE(fidelity(to_fock(in, rep.output.cutoffs()), rep.output), 0.999) << i;
    }
}

TEST(cphase_fig3, agrees_with_fig2_and_stays_pure) {
    CoherentRegister in(1.0, {0.5, Complex(0.1, 0.3), -0.4, 0.6});
    auto f2 = simulate_cphase_fig2(make_spec(Architecture::CPhaseFig2, kPi, 0.02), in);
    auto f3 = simulate_cphase_fig3(make_spec(Architecture::CPhaseFig3, kPi, 0.02), in);
    EXPECT_GE(mutual_fidelity(f2.output, f3.output), 0.995);
    EXPECT_GE(f3.purity, 0.99);
    EXPECT_FALSE(f3.output.is_pure());
}

TEST(cphase_fig3, success_probability_in_unit_interval) {
    auto rep = simulate_cphase_fig3(make_spec(Architecture::CPhaseFig3, kPi / 2, 0.1, DetectorModel::OnOffPovm),
                                    CoherentRegister(1.0, {1.0, 1.0, 1.0, 1.0}));
    EXPECT_GT(rep.success_probability, 0.0);
    EXPECT_LE(rep.success_probability, 1.0);
    EXPECT_NEAR(rep.output.trace(), rep.success_probability, 1e-12);
}

// ---------------------------------------------------------------------------
// Hadamard

TEST(hadamard, exact_turns_coherent_state_into_even_cat) {
    auto rep = simulate_hadamard(make_spec(Architecture::HadamardExact, kPi, 0.02), CoherentQubit{1.0, 1.0, 0.0});
    EXPECT_GE(rep.fidelity_vs_ideal, 0.999);
    auto even = to_fock(CoherentQubit{1.0, 1.0, 1.0}, rep.output.cutoffs());
    EXPECT_GE(fidelity(even, rep.output), 0.999);
}

TEST(hadamard, exact_even_fock_variant) {
    CircuitSpec s = make_spec(Architecture::HadamardExact, kPi, 0.02);
    s.hadamard.variant = HadamardVariant::ExactEvenFock;
    s.hadamard.even_n = 2;
    auto rep = simulate_hadamard(s, CoherentQubit{1.0, 0.3, Complex(0.5, -0.2)});
    EXPECT_GE(rep.fidelity_vs_ideal, 0.999);
    EXPECT_LE(rep.success_probability, 1.0);
}

TEST(hadamard, approx_at_reference_weight) {
    CircuitSpec s = make_spec(Architecture::HadamardFig4, kPi, 0.02);
    s.hadamard.beta = 2.0;
    s.hadamard.gamma_weight = 0.1;
    auto r01 = simulate_hadamard(s, CoherentQubit{1.0, 1.0, 0.0});
    EXPECT_GE(r01.fidelity_vs_ideal, 0.99);
    EXPECT_NEAR(r01.requested_gamma, 0.1, 1e-15);
    EXPECT_NEAR(r01.achieved_gamma, 0.1, 1e-12);
    s.hadamard.gamma_weight = 0.05;
    auto r005 = simulate_hadamard(s, CoherentQubit{1.0, 1.0, 0.0});
    EXPECT_GT(r005.fidelity_vs_ideal, r01.fidelity_vs_ideal);
}

TEST(hadamard, approx_minus_branch_gives_odd_cat) {
    CircuitSpec s = make_spec(Architecture::HadamardFig4, kPi, 0.02);
    s.hadamard.gamma_weight = 0.1;
    auto rep = simulate_hadamard(s, CoherentQubit{1.0, 0.0, 1.0});
    auto odd = to_fock(CoherentQubit{1.0, 1.0, -1.0}, rep.output.cutoffs());
    EXPECT_GE(fidelity(odd, rep.output), 0.995);
}

TEST(hadamard, approx_requires_beta_twice_input_amplitude) {
    CircuitSpec s = make_spec(Architecture::HadamardFig4, kPi, 0.02);
    s.hadamard.gamma_weight = 0.1;
    s.hadamard.beta = 3.0;
    EXPECT_THROW(simulate_hadamard(s, CoherentQubit{1.0, 1.0, 0.0}), InfeasibleCondition);
    // An input at beta / 2 with a resource at alpha = 1 is accepted.
    EXPECT_NO_THROW(simulate_hadamard(s, CoherentQubit{1.5, 1.0, 0.0}));
}

TEST(hadamard, homodyne_window_is_a_probability) {
    CircuitSpec s = make_spec(Architecture::HadamardFig4, kPi, 0.05);
    s.hadamard.gamma_weight = 0.2;
    auto point = simulate_hadamard(s, CoherentQubit{1.0, 0.6, 0.8});
    s.homodyne_window = 1e-3;
    auto narrow = simulate_hadamard(s, CoherentQubit{1.0, 0.6, 0.8});
    EXPECT_NEAR(narrow.fidelity_vs_ideal, point.fidelity_vs_ideal, 1e-6);
    // Probability over [q - w, q + w] is about 2 w times the density.
    EXPECT_NEAR(narrow.success_probability / (2e-3 * point.success_probability), 1.0, 1e-4);
    // The acceptance value only matters when both branches are present; a
    // wide window mixes in outcomes where the branch weights are off.
    s.homodyne_window = 0.5;
    auto wide = simulate_hadamard(s, CoherentQubit{1.0, 0.6, 0.8});
    EXPECT_LT(wide.fidelity_vs_ideal, point.fidelity_vs_ideal);
}

TEST(hadamard, explicit_resource) {
    CircuitSpec s = make_spec(Architecture::HadamardExact, kPi, 0.02);
    auto def = simulate_hadamard(s, CoherentQubit{1.0, 0.4, 0.7});
    auto expl = simulate_hadamard(s, CoherentQubit{1.0, 0.4, 0.7}, CoherentQubit{1.0, 2.0, 2.0});
    EXPECT_NEAR(def.fidelity_vs_ideal, expl.fidelity_vs_ideal, 1e-12);
    EXPECT_THROW(simulate_hadamard(s, CoherentQubit{1.0, 0.4, 0.7}, CoherentQubit{1.2, 1.0, 1.0}),
                 InfeasibleCondition);
}

// ---------------------------------------------------------------------------
// Convergence across architectures

TEST(convergence, infidelity_falls_with_tap_for_random_inputs) {
    std::mt19937_64 rng(101);
    const std::vector<Architecture> archs{Architecture::PhaseFig1, Architecture::CPhaseFig2,
                                          Architecture::CPhaseFig3, Architecture::HadamardExact};
    for (Architecture arch : archs) {
        const bool two_mode = arch == Architecture::CPhaseFig2 || arch == Architecture::CPhaseFig3;
        for (int k = 0; k < 10; ++k) {
            CoherentRegister in(1.0, random_coefficients(rng, two_mode ? 4 : 2));
            double prev = 1.0;
            for (double r : kRLadder) {
                auto rep = simulate(make_spec(arch, kPi / 2, r), in);
                const double infid = 1.0 - rep.fidelity_vs_ideal;
                EXPECT_LE(infid, prev + 1e-6) << architecture_name(arch) << " input " << k << " r " << r;
                prev = infid;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Sweeps

TEST(sweep, r_axis_is_ordered_and_monotone) {
    const std::vector<double> rs{0.2, 0.1, 0.05, 0.03, 0.02};
    auto reps = sweep(make_spec(Architecture::PhaseFig1, kPi / 2, 0.1), CoherentRegister(1.0, {1.0, 0.5}),
                      SweepAxis::R, rs, 3);
    ASSERT_EQ(reps.size(), rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
        EXPECT_TRUE(reps[i].ok()) << reps[i].error;
        EXPECT_EQ(reps[i].r, rs[i]);
        if (i > 0) {
            EXPECT_GE(reps[i].fidelity_vs_ideal, reps[i - 1].fidelity_vs_ideal - 1e-6);
        }
    }
}

TEST(sweep, empty_values) {
    EXPECT_TRUE(sweep(CircuitSpec{}, CoherentRegister(1.0, {1.0, 0.0}), SweepAxis::R, {}).empty());
}

TEST(sweep, failing_point_is_isolated) {
    CircuitSpec s = make_spec(Architecture::PhaseFig1, kPi, 0.05);
    s.signal_cutoffs = {20};
    auto reps = sweep(s, CoherentRegister(1.0, {1.0, 1.0}), SweepAxis::Alpha, {0.5, 4.0, 1.0, 0.9}, 2);
    ASSERT_EQ(reps.size(), 4u);
    EXPECT_TRUE(reps[0].ok());
    EXPECT_EQ(reps[1].status, "CutoffTooSmall");
    EXPECT_FALSE(reps[1].error.empty());
    EXPECT_TRUE(reps[2].ok());
    EXPECT_TRUE(reps[3].ok());
    EXPECT_EQ(reps[3].alpha, 0.9);
}

TEST(sweep, threads_do_not_change_results) {
    const std::vector<double> phis{0.5, 1.0, 2.0, 3.0, 4.0, 5.5};
    const CircuitSpec s = make_spec(Architecture::CPhaseFig2, kPi, 0.05);
    const CoherentRegister in(1.0, {0.3, 0.5, -0.2, 0.7});
    auto serial = sweep(s, in, SweepAxis::Phi, phis, 1);
    auto parallel = sweep(s, in, SweepAxis::Phi, phis, 4);
    for (std::size_t i = 0; i < phis.size(); ++i) {
        EXPECT_EQ(serial[i].fidelity_vs_ideal, parallel[i].fidelity_vs_ideal);
        EXPECT_EQ(serial[i].success_probability, parallel[i].success_probability);
    }
}

TEST(sweep, gamma_axis) {
    CircuitSpec s = make_spec(Architecture::HadamardFig4, kPi, 0.02);
    auto reps = sweep(s, CoherentRegister(1.0, {1.0, 0.0}), SweepAxis::Gamma, {0.4, 0.2, -1.0});
    EXPECT_TRUE(reps[0].ok());
    EXPECT_GT(reps[1].fidelity_vs_ideal, reps[0].fidelity_vs_ideal);
    EXPECT_EQ(reps[2].status, "InfeasibleCondition");
}

// ---------------------------------------------------------------------------
// Cross-layer checks

TEST(cross_layer, phase_map_matches_operator_pipeline) {
    std::mt19937_64 rng(7);
    for (double a : {0.5, 1.0, 1.5, 2.0}) {
        for (double phi : {0.7, kPi / 2, kPi, 4.0}) {
            auto c = random_coefficients(rng, 2);
            const CoherentQubit in{a, c[0], c[1]};
            const auto p = solve_phase_gamma(a, phi);
            const double mu = std::max({a, std::abs(a + p.gamma), std::abs(-a + p.gamma)});
            const std::vector<int> cut{default_cutoff(mu)};
            auto pipeline = operator_pipeline_phase(to_fock(in, cut), p.gamma);
            auto mapped = to_fock(ideal_phase_gate(in, p.gamma).state, cut);
            EXPECT_GE(fidelity(mapped, pipeline), 1.0 - 1e-8) << a << " " << phi;
        }
    }
}

TEST(cross_layer, cphase_map_matches_operator_pipeline) {
    std::mt19937_64 rng(8);
    for (double a : {0.5, 1.0, 2.0}) {
        for (double phi : {kPi / 2, kPi, 4.0}) {
            CoherentRegister in(a, random_coefficients(rng, 4));
            const auto p = solve_cphase_gammas(a, phi);
            const auto cut = cphase_signal_cutoffs(a, p.gamma1, p.gamma2);
            auto pipeline = operator_pipeline_cphase(to_fock(in, cut), p.gamma1, p.gamma2);
            auto mapped = to_fock(ideal_cphase(in, p.gamma1, p.gamma2).state, cut);
            EXPECT_GE(fidelity(mapped, pipeline), 1.0 - 1e-8) << a << " " << phi;
            // Each arm subtraction carries 1/sqrt(2) from the balanced splitter.
            EXPECT_NEAR(pipeline.norm_squared() * 4.0 / mapped.norm_squared(), 1.0, 1e-7);
        }
    }
}

TEST(cross_layer, exact_hadamard_at_fock_level) {
    std::mt19937_64 rng(12);
    const double a = 1.0;
    const auto p = solve_cphase_gammas(a, kPi);
    const auto cut = cphase_signal_cutoffs(a, p.gamma1, p.gamma2);
    for (int k = 0; k < 5; ++k) {
        auto c = random_coefficients(rng, 2);
        CoherentRegister joint = tensor(CoherentRegister(a, {c[0], c[1]}), CoherentRegister(a, {1.0, 1.0}));
        auto after = operator_pipeline_cphase(to_fock(joint, cut), p.gamma1, p.gamma2);
        auto out = project_fock(after, 0, 2).state;
        const std::vector<int> out_cut{cut[1]};
        auto target = to_fock(ideal_hadamard_target(CoherentQubit{a, c[0], c[1]}), out_cut);
        EXPECT_GE(fidelity(target, out), 1.0 - 1e-9);
    }
}

TEST(mutual_fidelity, diagonal_states) {
    // Commuting states: F = (sum_i sqrt(p_i q_i))^2.
    auto basis = [](int n, double w) { return PureFockState::basis({3}, std::vector<int>{n}).scaled(std::sqrt(w)); };
    MixedState a(std::vector<PureFockState>{basis(0, 0.5), basis(1, 0.3), basis(2, 0.2)});
    MixedState b(std::vector<PureFockState>{basis(0, 0.2), basis(1, 0.2), basis(3, 0.6)});
    const double expected = std::pow(std::sqrt(0.5 * 0.2) + std::sqrt(0.3 * 0.2), 2);
    EXPECT_NEAR(mutual_fidelity(a, b), expected, 1e-12);
    EXPECT_NEAR(mutual_fidelity(b, a), expected, 1e-12);
    EXPECT_NEAR(mutual_fidelity(a, a), 1.0, 1e-12);
    MixedState pure(basis(1, 1.0));
    EXPECT_NEAR(mutual_fidelity(pure, a), 0.3, 1e-12);
}

TEST(names, round_trip) {
    for (Architecture a : {Architecture::PhaseFig1, Architecture::CPhaseFig2, Architecture::CPhaseFig3,
                           Architecture::HadamardFig4, Architecture::HadamardExact}) {
        EXPECT_EQ(parse_architecture(architecture_name(a)), a);
    }
    EXPECT_EQ(parse_detector("onoff"), DetectorModel::OnOffPovm);
    EXPECT_EQ(parse_detector("fock1"), DetectorModel::Fock1Projection);
    EXPECT_FALSE(parse_detector("pnr").has_value());
    EXPECT_EQ(parse_sweep_axis("Gamma"), SweepAxis::Gamma);
    EXPECT_FALSE(parse_sweep_axis("beta").has_value());
}

TEST(ancilla_cutoff, policy) {
    EXPECT_EQ(ancilla_cutoff_for(0.02), 8);
    const int n = ancilla_cutoff_for(1.5);
    EXPECT_GT(n, 8);
    EXPECT_LT(coherent_truncation_loss(1.5, n), 1e-12);
    EXPECT_GE(coherent_truncation_loss(1.5, n - 1), 1e-12);
}
