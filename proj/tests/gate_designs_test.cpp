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

#include "catgate/gate_designs.h"

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

HadamardRequest approx_request(double alpha, double beta, double gamma_weight) {
    HadamardRequest r;
    r.alpha = alpha;
    r.beta = beta;
    r.gamma_weight = gamma_weight;
    r.variant = HadamardVariant::Approx;
    return r;
}

}  // namespace

TEST(solve_phase, examples) {
    auto p = solve_phase_gamma(1.0, kPi);
    EXPECT_EQ(p.gamma, Complex(0.0));
    auto q = solve_phase_gamma(1.0, kPi / 2);
    EXPECT_LT(std::abs(q.gamma - Complex(0.0, 1.0)), 1e-15);
    EXPECT_THROW(solve_phase_gamma(1.0, 0.0), DegeneratePhase);
    EXPECT_THROW(solve_phase_gamma(1.0, 5e-7), DegeneratePhase);
    EXPECT_THROW(solve_phase_gamma(1.0, 2 * kPi), DegeneratePhase);
    EXPECT_NO_THROW(solve_phase_gamma(1.0, 2e-6));
}

TEST(solve_phase, wraps_negative_angles) {
    auto p = solve_phase_gamma(1.0, -kPi / 2);
    EXPECT_NEAR(p.phi, 3 * kPi / 2, 1e-15);
    EXPECT_LE(p.residual(), 1e-12);
}

TEST(solve_phase, residuals_random) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ua(0.5, 2.0), up(0.05, 2 * kPi - 0.05);
    for (int k = 0; k < 200; ++k) {
        const Complex a(ua(rng), 0.3 * ua(rng) - 0.3);
        EXPECT_LE(solve_phase_gamma(a, up(rng)).residual(), 1e-12);
    }
}

TEST(solve_cphase, pi_roots) {
    auto p = solve_cphase_gammas(1.0, kPi);
    const double s5 = std::sqrt(5.0);
    EXPECT_LT(std::abs(p.gamma1 - Complex(-1.0 - s5)), 1e-14);
    EXPECT_LT(std::abs(p.gamma2 - Complex(-1.0 + s5)), 1e-14);
}

TEST(solve_cphase, quarter_turn_product) {
    auto p = solve_cphase_gammas(1.0, kPi / 2);
    EXPECT_LT(std::abs(p.gamma1 * p.gamma2 - Complex(-4.0, -4.0)), 1e-12);
    EXPECT_LT(std::abs(p.gamma1 + p.gamma2 + 2.0), 1e-12);
}

TEST(solve_cphase, residuals_random) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ua(0.5, 2.0), up(0.05, 2 * kPi - 0.05);
    for (int k = 0; k < 200; ++k) {
        auto p = solve_cphase_gammas(ua(rng), up(rng));
        EXPECT_LE(p.sum_residual(), 1e-12);
        EXPECT_LE(p.product_residual(), 1e-12);
    }
    EXPECT_THROW(solve_cphase_gammas(1.0, 0.0), DegeneratePhase);
}

TEST(solve_cphase, swapped_roots_give_same_gate) {
    std::mt19937_64 rng(9);
    for (double phi : {0.4, 2.2, kPi, 4.9}) {
        auto p = solve_cphase_gammas(1.0, phi);
        CoherentRegister r(1.0, random_coefficients(rng, 4));
        auto a = ideal_cphase(r, p.gamma1, p.gamma2).state;
        auto b = ideal_cphase(r, p.gamma2, p.gamma1).state;
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_LT(std::abs(a.coeff(i) - b.coeff(i)), 1e-12 * std::abs(a.coeff(i)) + 1e-15);
        }
    }
}

TEST(tap, transmissivity_round_trip) {
    for (double t : {0.05, 0.3, 0.7, 0.99}) {
        EXPECT_NEAR(transmissivity_from_gamma(gamma_from_transmissivity(t)), t, 1e-12);
    }
    EXPECT_NEAR(gamma_from_transmissivity(0.6), 0.75, 1e-15);
    EXPECT_THROW(gamma_from_transmissivity(1.0), InfeasibleCondition);
    EXPECT_THROW(transmissivity_from_gamma(-0.1), InfeasibleCondition);
}

TEST(solve_hadamard, approx_reference_point) {
    auto p = solve_hadamard(approx_request(1.0, 2.0, 0.2));
    EXPECT_NEAR(p.q, (4.0 - std::log(10.0)) / (2.0 * std::sqrt(2.0)), 1e-14);
    EXPECT_NEAR(p.q, 0.6001, 5e-5);
    EXPECT_LE(p.tap_residual(), 1e-12);
    EXPECT_LE(p.condition_residual(), 1e-10);
    // Oracle: the same ratio through Fock-space quadrature wavefunctions.
    const int cut = 40;
    CVector bra = quadrature_bra(Quadrature::X, p.q, cut);
    const Complex on_beta = (bra.transpose() * coherent_state(2.0, cut).amplitudes())(0);
    const Complex on_vac = bra(0);
    EXPECT_NEAR(std::abs(on_beta * 2.0 / on_vac - 0.2), 0.0, 1e-10);
}

TEST(solve_hadamard, log_term_vanishes) {
    auto p = solve_hadamard(approx_request(1.0, 1.5, 1.5));
    EXPECT_NEAR(p.q, 1.5 / std::sqrt(2.0), 1e-14);
}

TEST(solve_hadamard, from_transmissivity) {
    HadamardRequest r = approx_request(1.0, 2.0, 0.0);
    r.t_gamma = 0.6;
    auto p = solve_hadamard(r);
    EXPECT_NEAR(p.gamma_weight, 0.75, 1e-15);
    EXPECT_LE(p.condition_residual(), 1e-10);
}

TEST(solve_hadamard, exact_variants) {
    HadamardRequest r;
    r.alpha = 1.3;
    r.variant = HadamardVariant::ExactHomodyneP;
    auto p = solve_hadamard(r);
    EXPECT_EQ(p.q, 0.0);
    EXPECT_EQ(p.quadrature, Quadrature::P);
    EXPECT_LE(p.condition_residual(), 1e-15);
    r.variant = HadamardVariant::ExactEvenFock;
    r.even_n = 4;
    EXPECT_LE(solve_hadamard(r).condition_residual(), 1e-15);
    r.even_n = 3;
    EXPECT_THROW(solve_hadamard(r), InfeasibleCondition);
}

TEST(solve_hadamard, infeasible_inputs) {
    EXPECT_THROW(solve_hadamard(approx_request(1.0, 0.0, 0.2)), InfeasibleCondition);
    EXPECT_THROW(solve_hadamard(approx_request(1.0, -1.0, 0.2)), InfeasibleCondition);
    EXPECT_THROW(solve_hadamard(approx_request(0.0, 2.0, 0.2)), InfeasibleCondition);
}

TEST(ideal_gate, phase_quarter_turn_on_plus_state) {
    CoherentQubit in = CoherentQubit{1.0, 1.0, 1.0}.normalized_copy();
    auto rep = run_ideal_phase(in, kPi / 2);
    EXPECT_GE(rep.fidelity, 1.0 - 1e-10);
    CoherentQubit target{1.0, std::polar(1.0, -kPi / 4), std::polar(1.0, kPi / 4)};
    EXPECT_GE(fidelity_cb(target.reg(), rep.output), 1.0 - 1e-10);
    EXPECT_GT(rep.conditional_norm_gain, 0.0);
}

TEST(ideal_gate, cphase_pi_on_uniform_register) {
    CoherentRegister in = CoherentRegister(1.0, {1.0, 1.0, 1.0, 1.0}).normalized();
    auto rep = run_ideal_cphase(in, kPi);
    EXPECT_GE(rep.fidelity, 1.0 - 1e-10);
    CoherentRegister target(1.0, {1.0, 1.0, 1.0, -1.0});
    EXPECT_GE(fidelity_cb(target, rep.output), 1.0 - 1e-10);
}

TEST(ideal_gate, random_inputs_hit_targets) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ua(0.5, 2.0), up(0.05, 2 * kPi - 0.05);
    for (int k = 0; k < 100; ++k) {
        auto c = random_coefficients(rng, 2);
        EXPECT_GE(run_ideal_phase(CoherentQubit{ua(rng), c[0], c[1]}, up(rng)).fidelity, 1.0 - 1e-10);
        EXPECT_GE(run_ideal_cphase(CoherentRegister(ua(rng), random_coefficients(rng, 4)), up(rng)).fidelity,
                  1.0 - 1e-10);
    }
}

TEST(ideal_gate, cphase_inverse_restores_ratios) {
    std::mt19937_64 rng(19);
    for (double phi : {0.6, 1.9, kPi, 4.1}) {
        CoherentRegister r(1.0, random_coefficients(rng, 4));
        auto fwd = solve_cphase_gammas(1.0, phi);
        auto back = solve_cphase_gammas(1.0, -phi);
        auto out = ideal_cphase(ideal_cphase(r, fwd.gamma1, fwd.gamma2).state, back.gamma1, back.gamma2).state;
        const Complex k = out.coeff(0) / r.coeff(0);
        for (std::size_t i = 1; i < 4; ++i) {
            EXPECT_LT(std::abs(out.coeff(i) / r.coeff(i) - k), 1e-10 * std::abs(k)) << phi;
        }
    }
}

TEST(ideal_gate, exact_hadamard_on_coherent_state) {
    for (auto variant : {HadamardVariant::ExactHomodyneP, HadamardVariant::ExactEvenFock}) {
        HadamardRequest r;
        r.alpha = 1.0;
        r.variant = variant;
        r.even_n = 2;
        auto rep = run_ideal_hadamard(CoherentQubit{1.0, 1.0, 0.0}, solve_hadamard(r));
        EXPECT_GE(rep.fidelity, 1.0 - 1e-12) << hadamard_variant_name(variant);
        EXPECT_GE(fidelity_cb(rep.output, CoherentRegister(1.0, {1.0, 1.0})), 1.0 - 1e-12);
    }
}

TEST(ideal_gate, exact_hadamard_random_inputs) {
    std::mt19937_64 rng(29);
    HadamardRequest r;
    r.alpha = 1.2;
    r.variant = HadamardVariant::ExactHomodyneP;
    const auto params = solve_hadamard(r);
    for (int k = 0; k < 20; ++k) {
        auto c = random_coefficients(rng, 2);
        EXPECT_GE(run_ideal_hadamard(CoherentQubit{1.2, c[0], c[1]}, params).fidelity, 1.0 - 1e-10);
    }
}

TEST(ideal_gate, approx_hadamard_improves_as_gamma_shrinks) {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 20; ++k) {
        auto c = random_coefficients(rng, 2);
        const CoherentQubit in{1.0, c[0], c[1]};
        double prev = 1.0;
        for (double g : {0.4, 0.2, 0.1, 0.05}) {
            auto rep = run_ideal_hadamard(in, solve_hadamard(approx_request(1.0, 2.0, g)));
            EXPECT_LT(1.0 - rep.fidelity, prev) << "Gamma " << g;
            EXPECT_NEAR(rep.first_order_error, g / 2.0, 1e-15);
            prev = 1.0 - rep.fidelity;
        }
    }
}
