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

#ifndef CATGATE_GATE_DESIGNS_H
#define CATGATE_GATE_DESIGNS_H

#include <string_view>

#include "catgate/coherent_algebra.h"

namespace catgate {

/// Phases closer than this to 0 (mod 2 pi) are rejected as DegeneratePhase.
inline constexpr double kMinPhase = 1e-6;

/// Reduces `phi` to [0, 2 pi).
double wrap_phase(double phi);

/// Displacement gamma turning D(-gamma) a D(gamma) into a phase gate:
/// (gamma - alpha) / (gamma + alpha) = e^{i phi}.
struct PhaseGateParams {
    Complex alpha;
    double phi;
    Complex gamma;

    /// |(gamma - alpha)/(gamma + alpha) - e^{i phi}|.
    double residual() const;
};

/// Mach-Zehnder displacements with gamma1 + gamma2 = -2 alpha and
/// gamma1 gamma2 = 8 alpha^2 / (e^{i phi} - 1).
struct CPhaseParams {
    Complex alpha;
    double phi;
    Complex gamma1;
    Complex gamma2;

    double sum_residual() const;
    /// Relative residual of the product constraint.
    double product_residual() const;
};

enum class HadamardVariant { ExactHomodyneP, ExactEvenFock, Approx };

std::string_view hadamard_variant_name(HadamardVariant v);

struct HadamardRequest {
    double alpha = 1.0;        // resource cat amplitude
    double beta = 2.0;         // displaced input amplitude
    double t_gamma = 0.0;      // BS_Gamma transmissivity, used when gamma_weight <= 0
    double gamma_weight = 0.0; // Gamma; takes precedence when positive
    HadamardVariant variant = HadamardVariant::Approx;
    int even_n = 0;            // Fock outcome for ExactEvenFock
};

struct HadamardParams {
    double alpha;
    double beta;
    double gamma_weight;  // Gamma = t / sqrt(1 - t^2)
    double t_gamma;
    double q;             // homodyne acceptance value
    Quadrature quadrature;
    HadamardVariant variant;
    int even_n;

    /// |Gamma - t / sqrt(1 - t^2)| (zero for exact variants).
    double tap_residual() const;
    /// |<q|beta> beta - <q|0> Gamma alpha| for Approx, |<pi|alpha> - <pi|-alpha>|
    /// for the exact variants. Uses closed-form overlaps.
    double condition_residual() const;
};

double gamma_from_transmissivity(double t);
double transmissivity_from_gamma(double gamma_weight);

/// gamma = i alpha / tan(phi / 2); gamma = 0 exactly at phi = pi.
PhaseGateParams solve_phase_gamma(Complex alpha, double phi);

/// gamma_{1,2} = -alpha [1 +- sqrt((e^{i phi} - 9)/(e^{i phi} - 1))] with the
/// principal square root; gamma1 takes the + sign.
CPhaseParams solve_cphase_gammas(Complex alpha, double phi);

/// Approx: q = (beta^2 - ln(beta / (Gamma alpha))) / (sqrt(2) beta) on x.
/// ExactHomodyneP: q = 0 on p. ExactEvenFock: stores the even outcome.
HadamardParams solve_hadamard(const HadamardRequest &request);

enum class GateKind { Phase, CPhase, Hadamard };

std::string_view gate_kind_name(GateKind g);

struct IdealRunReport {
    GateKind gate;
    CoherentRegister output;
    CoherentRegister target;
    double fidelity;
    double conditional_norm_gain;
    /// |Gamma alpha / beta| for the approximate Hadamard, 0 otherwise.
    double first_order_error = 0.0;
};

/// Targets: phase (x e^{-i phi/2}, y e^{i phi/2}); cphase
/// (c11, c10, c01, e^{i phi} c00); Hadamard (x + y, x - y).
CoherentQubit phase_gate_target(const CoherentQubit &q, double phi);
CoherentRegister cphase_target(const CoherentRegister &r, double phi);

IdealRunReport run_ideal_phase(const CoherentQubit &input, double phi);
IdealRunReport run_ideal_cphase(const CoherentRegister &input, double phi);
/// Exact variants apply cphase(pi) against the even cat resource and contract
/// the input mode with <pi|; Approx evaluates the joint-subtraction output
/// x<q|beta>[(beta + Gamma alpha)|alpha> + (beta - Gamma alpha)|-alpha>]
///   + y<q|0> Gamma alpha (|alpha> - |-alpha>)
/// in the basis of the resource amplitude.
IdealRunReport run_ideal_hadamard(const CoherentQubit &input, const HadamardParams &params);

}  // namespace catgate

#endif
