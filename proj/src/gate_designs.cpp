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

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "catgate/errors.h"

namespace catgate {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const Complex kI(0.0, 1.0);

bool is_pi(double phi) { return std::abs(phi - std::numbers::pi) <= 4.0 * std::numeric_limits<double>::epsilon(); }

// e^{i phi}, exact at phi = pi.
Complex unit_phase(double phi) { return is_pi(phi) ? Complex(-1.0, 0.0) : std::polar(1.0, phi); }

double checked_phase(double phi, const char *gate) {
    if (!std::isfinite(phi)) {
        throw DegeneratePhase(std::string(gate) + ": phase must be finite");
    }
    const double w = wrap_phase(phi);
    if (w < kMinPhase || kTwoPi - w < kMinPhase) {
        std::ostringstream msg;
        msg << gate << ": phase " << phi << " is 0 mod 2pi; the displacement condition "
            << (std::string_view(gate) == "phase" ? "(gamma - alpha)/(gamma + alpha) = e^{i phi}"
                                                  : "gamma1 gamma2 = 8 alpha^2/(e^{i phi} - 1)")
            << " has no finite solution";
        throw DegeneratePhase(msg.str());
    }
    return w;
}

}  // namespace

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    return w;
}

std::string_view hadamard_variant_name(HadamardVariant v) {
    switch (v) {
        case HadamardVariant::ExactHomodyneP:
            return "exact_homodyne_p";
        case HadamardVariant::ExactEvenFock:
            return "exact_even_fock";
        case HadamardVariant::Approx:
            return "approx";
    }
    return "unknown";
}

std::string_view gate_kind_name(GateKind g) {
    switch (g) {
        case GateKind::Phase:
            return "phase";
        case GateKind::CPhase:
            return "cphase";
        case GateKind::Hadamard:
            return "hadamard";
    }
    return "unknown";
}

double PhaseGateParams::residual() const {
    return std::abs((gamma - alpha) / (gamma + alpha) - unit_phase(phi));
}

double CPhaseParams::sum_residual() const { return std::abs(gamma1 + gamma2 + 2.0 * alpha); }

double CPhaseParams::product_residual() const {
    const Complex target = 8.0 * alpha * alpha / (unit_phase(phi) - 1.0);
    return std::abs(gamma1 * gamma2 - target) / std::abs(target);
}

double gamma_from_transmissivity(double t) {
    if (!(t > 0.0 && t < 1.0)) {
        throw InfeasibleCondition("t_Gamma must lie in (0, 1)");
    }
    return t / std::sqrt(1.0 - t * t);
}

double transmissivity_from_gamma(double gamma_weight) {
    if (!(gamma_weight > 0.0) || !std::isfinite(gamma_weight)) {
        throw InfeasibleCondition("Gamma must be positive and finite");
    }
    return gamma_weight / std::sqrt(1.0 + gamma_weight * gamma_weight);
}

double HadamardParams::tap_residual() const {
    if (variant != HadamardVariant::Approx) {
        return 0.0;
    }
    return std::abs(gamma_weight - t_gamma / std::sqrt(1.0 - t_gamma * t_gamma));
}

double HadamardParams::condition_residual() const {
    if (variant == HadamardVariant::Approx) {
        const Complex lhs = quadrature_coherent_overlap(Quadrature::X, q, beta) * beta;
        const Complex rhs = quadrature_coherent_overlap(Quadrature::X, q, 0.0) * gamma_weight * alpha;
        return std::abs(lhs - rhs);
    }
    if (variant == HadamardVariant::ExactHomodyneP) {
        return std::abs(quadrature_coherent_overlap(quadrature, q, alpha) -
                        quadrature_coherent_overlap(quadrature, q, -alpha));
    }
    return std::abs(fock_coherent_overlap(even_n, alpha) - fock_coherent_overlap(even_n, -alpha));
}

PhaseGateParams solve_phase_gamma(Complex alpha, double phi) {
    const double w = checked_phase(phi, "phase");
    Complex gamma = 0.0;
    if (!is_pi(w)) {
        gamma = kI * alpha / std::tan(0.5 * w);
    }
    return {alpha, w, gamma};
}

CPhaseParams solve_cphase_gammas(Complex alpha, double phi) {
    const double w = checked_phase(phi, "cphase");
    const Complex e = unit_phase(w);
    const Complex root = std::sqrt((e - 9.0) / (e - 1.0));
    return {alpha, w, -alpha * (1.0 + root), -alpha * (1.0 - root)};
}

HadamardParams solve_hadamard(const HadamardRequest &request) {
    HadamardParams p{};
    p.alpha = request.alpha;
    p.beta = request.beta;
    p.variant = request.variant;
    p.even_n = 0;
    p.quadrature = Quadrature::X;
    if (!(request.alpha > 0.0) || !std::isfinite(request.alpha)) {
        throw InfeasibleCondition("Hadamard needs a real positive resource amplitude alpha");
    }
    switch (request.variant) {
        case HadamardVariant::ExactHomodyneP:
            p.quadrature = Quadrature::P;
            p.q = 0.0;
            p.gamma_weight = 0.0;
            p.t_gamma = 0.0;
            return p;
        case HadamardVariant::ExactEvenFock:
            if (request.even_n < 0 || request.even_n % 2 != 0) {
                throw InfeasibleCondition("even-Fock projection needs a non-negative even photon number");
            }
            p.even_n = request.even_n;
            p.q = 0.0;
            p.gamma_weight = 0.0;
            p.t_gamma = 0.0;
            return p;
        case HadamardVariant::Approx:
            break;
    }
    if (request.gamma_weight > 0.0) {
        p.gamma_weight = request.gamma_weight;
        p.t_gamma = transmissivity_from_gamma(request.gamma_weight);
    } else {
        p.t_gamma = request.t_gamma;
        p.gamma_weight = gamma_from_transmissivity(request.t_gamma);
    }
    if (!(request.beta > 0.0) || !std::isfinite(request.beta)) {
        throw InfeasibleCondition("approximate Hadamard needs beta > 0");
    }
    const double ga = p.gamma_weight * p.alpha;
    if (!(ga > 0.0)) {
        throw InfeasibleCondition("approximate Hadamard needs Gamma alpha > 0");
    }
    // <x=q|beta> / <x=q|0> = exp(sqrt(2) beta q - beta^2) for real beta.
    p.q = (p.beta * p.beta - std::log(p.beta / ga)) / (std::sqrt(2.0) * p.beta);
    return p;
}

CoherentQubit phase_gate_target(const CoherentQubit &q, double phi) {
    return {q.alpha, q.x * std::polar(1.0, -0.5 * phi), q.y * std::polar(1.0, 0.5 * phi)};
}

CoherentRegister cphase_target(const CoherentRegister &r, double phi) {
    std::vector<Complex> c = r.coeffs();
    c[3] *= unit_phase(wrap_phase(phi));
    return CoherentRegister(r.alpha(), std::move(c));
}

IdealRunReport run_ideal_phase(const CoherentQubit &input, double phi) {
    const PhaseGateParams params = solve_phase_gamma(input.alpha, phi);
    const auto mapped = ideal_phase_gate(input, params.gamma);
    const CoherentRegister target = phase_gate_target(input, params.phi).reg();
    return {GateKind::Phase, mapped.state.reg(), target, fidelity_cb(target, mapped.state.reg()),
            mapped.conditional_norm_gain};
}

IdealRunReport run_ideal_cphase(const CoherentRegister &input, double phi) {
    const CPhaseParams params = solve_cphase_gammas(input.alpha(), phi);
    const auto mapped = ideal_cphase(input, params.gamma1, params.gamma2);
    const CoherentRegister target = cphase_target(input, params.phi);
    return {GateKind::CPhase, mapped.state, target, fidelity_cb(target, mapped.state), mapped.conditional_norm_gain};
}

IdealRunReport run_ideal_hadamard(const CoherentQubit &input, const HadamardParams &params) {
    const double a = params.alpha;
    const CoherentQubit target_q = ideal_hadamard_target(CoherentQubit{a, input.x, input.y});
    const CoherentRegister target = target_q.reg();
    const double in_norm = CoherentQubit{a, input.x, input.y}.norm_squared();
    if (in_norm < kZeroNorm * kZeroNorm) {
        throw ZeroNorm("Hadamard applied to a zero-norm state");
    }

    CoherentQubit out{a, 0.0, 0.0};
    double first_order = 0.0;
    if (params.variant == HadamardVariant::Approx) {
        const Complex on_beta = quadrature_coherent_overlap(Quadrature::X, params.q, params.beta);
        const Complex on_vac = quadrature_coherent_overlap(Quadrature::X, params.q, 0.0);
        const double ga = params.gamma_weight * a;
        out.x = input.x * on_beta * (params.beta + ga) + input.y * on_vac * ga;
        out.y = input.x * on_beta * (params.beta - ga) - input.y * on_vac * ga;
        first_order = ga / params.beta;
    } else {
        const CoherentRegister joint = tensor(CoherentRegister(a, {input.x, input.y}), CoherentRegister(a, {1.0, 1.0}));
        const CPhaseParams cp = solve_cphase_gammas(Complex(a), std::numbers::pi);
        const auto mapped = ideal_cphase(joint, cp.gamma1, cp.gamma2);
        Complex bra_plus, bra_minus;
        if (params.variant == HadamardVariant::ExactHomodyneP) {
            bra_plus = quadrature_coherent_overlap(params.quadrature, params.q, a);
            bra_minus = quadrature_coherent_overlap(params.quadrature, params.q, -a);
        } else {
            bra_plus = fock_coherent_overlap(params.even_n, a);
            bra_minus = fock_coherent_overlap(params.even_n, -a);
        }
        out = project_register_mode(mapped.state, 0, bra_plus, bra_minus);
    }
    return {GateKind::Hadamard, out.reg(), target, fidelity_cb(target, out.reg()), out.norm_squared() / in_norm,
            first_order};
}

}  // namespace catgate
