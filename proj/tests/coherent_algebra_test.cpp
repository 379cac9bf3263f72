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

#include "catgate/coherent_algebra.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "catgate/errors.h"
#include "catgate/fock_ops.h"
#include "test_util.h"

using namespace catgate;
using catgate::testing::random_coefficients;

namespace {

const Complex kI(0.0, 1.0);

CoherentQubit random_qubit(std::mt19937_64 &rng, Complex alpha) {
    auto c = random_coefficients(rng, 2);
    return {alpha, c[0], c[1]};
}

CoherentRegister random_register(std::mt19937_64 &rng, Complex alpha) {
    return CoherentRegister(alpha, random_coefficients(rng, 4));
}

}  // namespace

TEST(overlaps, closed_forms) {
    EXPECT_NEAR(std::abs(coherent_overlap(1.0, -1.0) - std::exp(-2.0)), 0.0, 1e-15);
    // |<a|b>|^2 = exp(-|a - b|^2).
    const Complex a(0.3, -0.7), b(-1.1, 0.4);
    EXPECT_NEAR(std::norm(coherent_overlap(a, b)), std::exp(-std::norm(a - b)), 1e-14);
    // Against the truncated Fock vectors.
    auto fa = coherent_state(a, 40);
    auto fb = coherent_state(b, 40);
    EXPECT_LT(std::abs(overlap(fa, fb) - coherent_overlap(a, b)), 1e-12);
    for (int n = 0; n < 10; ++n) {
        EXPECT_LT(std::abs(fock_coherent_overlap(n, b) - fb.amplitudes()(n)), 1e-14) << n;
    }
}

TEST(overlaps, quadrature_matches_fock_contraction) {
    const Complex b(0.8, 0.5);
    auto fb = coherent_state(b, 50);
    for (Quadrature qd : {Quadrature::X, Quadrature::P}) {
        for (double q : {-1.3, 0.0, 0.6001, 2.1}) {
            // quadrature_bra is already the bra, so no conjugation here.
            const Complex fock = (quadrature_bra(qd, q, 50).transpose() * fb.amplitudes())(0);
            EXPECT_LT(std::abs(fock - quadrature_coherent_overlap(qd, q, b)), 1e-12) << quadrature_name(qd) << q;
        }
    }
}

TEST(gram, single_mode) {
    CMatrix g = gram(1.0, 1);
    EXPECT_NEAR(g(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(g(0, 1).real(), std::exp(-2.0), 1e-15);
    EXPECT_NEAR(g(1, 0).real(), std::exp(-2.0), 1e-15);
    EXPECT_NEAR(g(1, 1).real(), 1.0, 1e-15);
}

TEST(gram, degenerate_at_zero_amplitude) {
    CMatrix g = gram(0.0, 2);
    EXPECT_LT((g - CMatrix::Ones(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(gram, two_modes) {
    CMatrix g = gram(1.0, 2);
    EXPECT_NEAR(g(0, 3).real(), std::exp(-4.0), 1e-15);
    EXPECT_NEAR(g(0, 1).real(), std::exp(-2.0), 1e-15);
    EXPECT_NEAR(g(1, 2).real(), std::exp(-4.0), 1e-15);
    EXPECT_LT((g - g.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(g(i, i), Complex(1.0));
    }
}

TEST(gram, positive_semidefinite) {
    for (int n : {1, 2}) {
        for (double a = 0.0; a <= 3.0; a += 0.05) {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(gram(a, n));
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12) << a;
        }
    }
}

TEST(gram, matches_fock_overlaps) {
    const Complex a(0.9, 0.3);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            std::vector<Complex> ci(4, 0.0), cj(4, 0.0);
            ci[i] = 1.0;
            cj[j] = 1.0;
            const std::vector<int> cut{30, 30};
            Complex fock = overlap(to_fock(CoherentRegister(a, ci), cut), to_fock(CoherentRegister(a, cj), cut));
            EXPECT_LT(std::abs(fock - gram(a, 2)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))), 1e-12);
        }
    }
}

TEST(inner, fidelity_examples) {
    CoherentRegister u(1.0, {1.0, 0.0});
    CoherentRegister v(1.0, {0.0, 1.0});
    EXPECT_NEAR(fidelity_cb(u, v), std::exp(-4.0), 1e-15);
    EXPECT_NEAR(fidelity_cb(u, u), 1.0, 1e-15);
}

TEST(inner, conjugate_symmetric) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 20; ++k) {
        auto u = random_register(rng, Complex(0.7, 0.2));
        auto v = random_register(rng, Complex(0.7, 0.2));
        EXPECT_LT(std::abs(inner(u, v) - std::conj(inner(v, u))), 1e-14);
    }
}

TEST(inner, qubit_norm_formula) {
    CoherentQubit q{1.0, Complex(0.3, 0.4), Complex(-0.2, 0.9)};
    const double expected = std::norm(q.x) + std::norm(q.y) + 2.0 * (std::conj(q.x) * q.y).real() * std::exp(-2.0);
    EXPECT_NEAR(q.norm_squared(), expected, 1e-14);
    EXPECT_TRUE(q.normalized_copy().normalized());
}

TEST(inner, zero_norm_raises) {
    // At alpha = 0 the basis collapses; (1, -1) lies in the Gram kernel.
    CoherentRegister k(0.0, {1.0, -1.0});
    EXPECT_THROW(fidelity_cb(k, k), ZeroNorm);
    EXPECT_THROW(k.normalized(), ZeroNorm);
    EXPECT_THROW(CoherentRegister(1.0, {1.0, 2.0, 3.0}), std::invalid_argument);
}

TEST(phase_map, bare_annihilation) {
    CoherentQubit q{0.8, Complex(0.3, 0.1), Complex(-0.5, 0.2)};
    auto m = ideal_phase_gate(q, 0.0);
    EXPECT_LT(std::abs(m.state.x - q.x * 0.8), 1e-15);
    EXPECT_LT(std::abs(m.state.y + q.y * 0.8), 1e-15);
    EXPECT_NEAR(m.conditional_norm_gain, m.state.norm_squared() / q.norm_squared(), 1e-14);
}

TEST(phase_map, ratio_equals_requested_phase) {
    for (double phi : {0.3, std::numbers::pi / 2, 2.0, 4.5}) {
        const Complex a(1.2, 0.0);
        const Complex g = kI * a / std::tan(phi / 2.0);
        CoherentQubit q{a, Complex(0.6, 0.1), Complex(0.2, -0.7)};
        auto m = ideal_phase_gate(q, g);
        Complex ratio = (m.state.y * q.x) / (m.state.x * q.y);
        EXPECT_LT(std::abs(ratio - std::polar(1.0, phi)), 1e-12) << phi;
    }
}

TEST(phase_map, quarter_turn_arithmetic) {
    CoherentQubit q{1.0, 1.0, 1.0};
    auto m = ideal_phase_gate(q, kI);
    EXPECT_LT(std::abs(m.state.x - Complex(1.0, 1.0)), 1e-15);
    EXPECT_LT(std::abs(m.state.y - Complex(-1.0, 1.0)), 1e-15);
    EXPECT_LT(std::abs(m.state.y / m.state.x - kI), 1e-15);
}

TEST(phase_map, composition_adds_phases) {
    const double a = 1.1;
    std::mt19937_64 rng(11);
    for (auto [p1, p2] : {std::pair{0.7, 1.3}, std::pair{2.0, 2.5}, std::pair{0.4, 4.0}}) {
        auto q = random_qubit(rng, a);
        auto g = [&](double p) { return kI * a / std::tan(p / 2.0); };
        auto two = ideal_phase_gate(ideal_phase_gate(q, g(p1)).state, g(p2)).state;
        auto one = ideal_phase_gate(q, g(p1 + p2)).state;
        Complex r_two = (two.y / q.y) / (two.x / q.x);
        Complex r_one = (one.y / q.y) / (one.x / q.x);
        EXPECT_LT(std::abs(r_two - r_one), 1e-12);
        EXPECT_NEAR(fidelity_cb(two.reg(), one.reg()), 1.0, 1e-12);
    }
}

TEST(cphase_map, ratios_follow_solved_displacements) {
    // gamma1,2 from the sum/product constraints, solved here as a quadratic.
    std::mt19937_64 rng(3);
    for (double phi : {0.5, std::numbers::pi / 2, std::numbers::pi, 5.0}) {
        const Complex a = 1.0;
        const Complex sum = -2.0 * a;
        const Complex prod = 8.0 * a * a / (std::polar(1.0, phi) - 1.0);
        const Complex disc = std::sqrt(sum * sum - 4.0 * prod);
        const Complex g1 = (sum + disc) / 2.0, g2 = (sum - disc) / 2.0;
        auto r = random_register(rng, a);
        auto out = ideal_cphase(r, g1, g2).state;
        const Complex r11 = out.coeff(0) / r.coeff(0);
        EXPECT_LT(std::abs(out.coeff(1) / r.coeff(1) - r11), 1e-10 * std::abs(r11));
        EXPECT_LT(std::abs(out.coeff(2) / r.coeff(2) - r11), 1e-10 * std::abs(r11));
        EXPECT_LT(std::abs(out.coeff(3) / r.coeff(3) * std::polar(1.0, -phi) - r11), 1e-10 * std::abs(r11));
    }
}

TEST(cphase_map, undisplaced_double_subtraction) {
    const double a = 0.9;
    CoherentRegister r(a, {1.0, 1.0, 1.0, 1.0});
    auto out = ideal_cphase(r, 0.0, 0.0).state;
    EXPECT_NEAR(out.coeff(0).real(), 4 * a * a, 1e-15);
    EXPECT_EQ(out.coeff(1), Complex(0.0));
    EXPECT_EQ(out.coeff(2), Complex(0.0));
    EXPECT_NEAR(out.coeff(3).real(), 4 * a * a, 1e-15);
}

TEST(cphase_map, pi_flips_the_minus_minus_branch) {
    const double s5 = std::sqrt(5.0);
    CoherentRegister r(1.0, {0.5, 0.5, 0.5, 0.5});
    auto out = ideal_cphase(r, -1.0 + s5, -1.0 - s5).state;
    EXPECT_LT(std::abs(out.coeff(3) / r.coeff(3) + out.coeff(0) / r.coeff(0)), 1e-12);
}

TEST(cphase_map, symmetric_under_mode_swap) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 10; ++k) {
        auto r = random_register(rng, Complex(0.8, 0.1));
        const Complex g1(-1.3, 0.4), g2(0.2, -0.9);
        CoherentRegister swapped(r.alpha(), {r.coeff(0), r.coeff(2), r.coeff(1), r.coeff(3)});
        auto a = ideal_cphase(r, g1, g2).state;
        auto b = ideal_cphase(swapped, g2, g1).state;
        EXPECT_LT(std::abs(a.coeff(0) - b.coeff(0)), 1e-12);
        EXPECT_LT(std::abs(a.coeff(1) - b.coeff(2)), 1e-12);
        EXPECT_LT(std::abs(a.coeff(2) - b.coeff(1)), 1e-12);
        EXPECT_LT(std::abs(a.coeff(3) - b.coeff(3)), 1e-12);
    }
}

TEST(hadamard_target, examples) {
    auto h = [](Complex x, Complex y) { return ideal_hadamard_target(CoherentQubit{1.0, x, y}); };
    auto a = h(1.0, 0.0);
    EXPECT_EQ(a.x, Complex(1.0));
    EXPECT_EQ(a.y, Complex(1.0));
    auto b = h(1.0, 1.0);
    EXPECT_EQ(b.x, Complex(2.0));
    EXPECT_EQ(b.y, Complex(0.0));
    auto c = h(1.0, -1.0);
    EXPECT_EQ(c.x, Complex(0.0));
    EXPECT_EQ(c.y, Complex(2.0));
}

TEST(project_register, contracts_selected_mode) {
    CoherentRegister r(1.0, {1.0, 2.0, 3.0, 4.0});
    // Mode 0 with bra (1, 0): keeps c11 and c10.
    auto q0 = project_register_mode(r, 0, 1.0, 0.0);
    EXPECT_EQ(q0.x, Complex(1.0));
    EXPECT_EQ(q0.y, Complex(2.0));
    auto q1 = project_register_mode(r, 1, 0.0, 1.0);
    EXPECT_EQ(q1.x, Complex(2.0));
    EXPECT_EQ(q1.y, Complex(4.0));
}

TEST(to_fock, basis_state_is_coherent_state) {
    const std::vector<int> cut{25};
    auto f = to_fock(CoherentQubit{Complex(0.7, -0.3), 1.0, 0.0}, cut);
    EXPECT_LT((f.amplitudes() - coherent_state(Complex(0.7, -0.3), 25).amplitudes()).norm(), 1e-15);
}

TEST(to_fock, gram_norm_matches_fock_norm) {
    std::mt19937_64 rng(23);
    for (double a : {0.3, 1.0, 1.5, 2.0}) {
        auto q = random_qubit(rng, a);
        auto r = random_register(rng, a);
        EXPECT_NEAR(to_fock(q).norm_squared() / q.norm_squared(), 1.0, 1e-8) << a;
        EXPECT_NEAR(to_fock(r).norm_squared() / r.norm_squared(), 1.0, 1e-8) << a;
    }
}

TEST(to_fock, even_and_odd_cats_are_orthogonal) {
    auto even = to_fock(CoherentQubit{1.0, 1.0, 1.0}.normalized_copy());
    auto odd = to_fock(CoherentQubit{1.0, 1.0, -1.0}.normalized_copy());
    EXPECT_LT(std::abs(overlap(even, odd)), 1e-10);
    // Parity: even cat has no odd Fock components.
    for (int n = 1; n < 17; n += 2) {
        EXPECT_LT(std::abs(even.amplitudes()(n)), 1e-16);
    }
}

TEST(to_fock, register_product_order) {
    // Index 1 is |+a, -a>: mode 0 carries +a.
    CoherentRegister r(0.6, {0.0, 1.0, 0.0, 0.0});
    const std::vector<int> cut{20, 20};
    auto f = to_fock(r, cut);
    auto expected = tensor(coherent_state(0.6, 20), coherent_state(-0.6, 20));
    EXPECT_NEAR(fidelity(expected, f), 1.0, 1e-14);
}
