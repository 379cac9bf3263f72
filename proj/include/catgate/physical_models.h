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

#ifndef CATGATE_PHYSICAL_MODELS_H
#define CATGATE_PHYSICAL_MODELS_H

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catgate/coherent_algebra.h"
#include "catgate/gate_designs.h"

namespace catgate {

enum class Architecture { PhaseFig1, CPhaseFig2, CPhaseFig3, HadamardFig4, HadamardExact };
enum class DetectorModel { OnOffPovm, Fock1Projection };

std::string_view architecture_name(Architecture a);
std::optional<Architecture> parse_architecture(std::string_view name);
std::string_view detector_name(DetectorModel d);
std::optional<DetectorModel> parse_detector(std::string_view name);

/// Smallest cutoff >= 8 whose coherent truncation loss at `amplitude` is below 1e-12.
int ancilla_cutoff_for(double amplitude);

struct CircuitSpec {
    Architecture architecture = Architecture::PhaseFig1;
    Complex alpha = 1.0;
    double phi = 3.141592653589793;
    /// Amplitude reflectivity of every weak tap beam splitter, in (0, 0.5].
    double r = 0.05;
    DetectorModel detector = DetectorModel::Fock1Projection;
    /// Hadamard architectures only. `alpha` here is ignored in favour of
    /// CircuitSpec::alpha.
    HadamardRequest hadamard;
    /// Homodyne acceptance half-width; 0 means an exact eigenstate projection.
    double homodyne_window = 0.0;
    /// Overrides the solved homodyne value.
    std::optional<double> homodyne_q;
    /// Signal-mode cutoffs; empty selects the cutoff policy.
    std::vector<int> signal_cutoffs;
    /// Ancilla (tap) cutoff; 0 selects ancilla_cutoff_for().
    int ancilla_cutoff = 0;
};

struct Diagnostics {
    std::vector<int> cutoffs;        // signal cutoffs, then ancilla cutoff
    std::vector<double> tail_mass;   // per output mode
    double max_tail_mass = 0.0;
    DetectorModel detector = DetectorModel::Fock1Projection;
};

struct RunReport {
    Architecture architecture = Architecture::PhaseFig1;
    /// "ok", or the error kind when the point failed (sweeps).
    std::string status = "ok";
    std::string error;

    MixedState output;
    PureFockState target;
    /// Product of all conditioning probabilities (and densities, for homodyne).
    double success_probability = 0.0;
    double fidelity_vs_ideal = 0.0;
    /// ||out||^2 / ||in||^2 of the ideal analytic map for the same input.
    double conditional_norm_gain = 0.0;
    double purity = 1.0;
    Diagnostics diagnostics;

    // Gate parameters actually used.
    double r = 0.0;
    double phi = 0.0;
    double alpha = 0.0;
    double requested_gamma = 0.0;
    double achieved_gamma = 0.0;
    double q = 0.0;

    bool ok() const { return status == "ok"; }
};

/// D(-gamma) -> tap -> detector -> D(gamma) around a single mode, preceded by
/// the displacement: the photon-subtraction phase gate.
RunReport simulate_phase_fig1(const CircuitSpec &spec, const CoherentQubit &input);

/// Balanced BS, two displaced subtractions in one arm, balanced BS back.
RunReport simulate_cphase_fig2(const CircuitSpec &spec, const CoherentRegister &input);

/// Tap both modes, mix the taps, trace one out, split, displace the two
/// ancillas by gamma r / 2 and detect both.
RunReport simulate_cphase_fig3(const CircuitSpec &spec, const CoherentRegister &input);

/// HadamardFig4: approximate gate by joint subtraction Gamma a + b and x
/// homodyne on the input mode. HadamardExact: cphase(pi) via the Mach-Zehnder
/// circuit against the even cat resource, then p homodyne or even-Fock
/// projection of the input mode. The resource defaults to the normalized even
/// cat at `spec.alpha`; a supplied resource must share that amplitude.
RunReport simulate_hadamard(const CircuitSpec &spec, const CoherentQubit &input);
RunReport simulate_hadamard(const CircuitSpec &spec, const CoherentQubit &input, const CoherentQubit &resource);

/// Dispatches on spec.architecture. Single-mode architectures take the qubit
/// view of a one-mode register.
RunReport simulate(const CircuitSpec &spec, const CoherentRegister &input);

enum class SweepAxis { R, Gamma, Phi, Alpha };

std::string_view sweep_axis_name(SweepAxis a);
std::optional<SweepAxis> parse_sweep_axis(std::string_view name);

/// Copy of `spec` with the swept field set. For Alpha the input register is
/// rebuilt at the new amplitude by `sweep`.
CircuitSpec with_axis_value(CircuitSpec spec, SweepAxis axis, double value);

/// Independent simulations, one per value, returned in input order. Failing
/// points carry their error in the report instead of aborting the sweep.
/// Points run on up to `threads` workers (0 = hardware concurrency).
std::vector<RunReport> sweep(const CircuitSpec &spec_template, const CoherentRegister &input, SweepAxis axis,
                             const std::vector<double> &values, unsigned threads = 0);

/// Fidelity between two outputs: the pure-state formula when either side is
/// pure, otherwise the Uhlmann fidelity of the density operators.
double mutual_fidelity(const MixedState &a, const MixedState &b);

/// Ideal operator sequences in Fock space (no taps, exact a): used to
/// cross-check the coherent-basis maps.
PureFockState operator_pipeline_phase(const PureFockState &input, Complex gamma);
/// U_BS^dag D2^dag a D2 D1^dag a D1 U_BS with D_k = D(gamma_k / sqrt 2) on mode 0.
PureFockState operator_pipeline_cphase(const PureFockState &input, Complex gamma1, Complex gamma2);

/// Cutoffs (mode 0, mode 1) the cphase pipeline needs at the given amplitude.
std::vector<int> cphase_signal_cutoffs(Complex alpha, Complex gamma1, Complex gamma2);

}  // namespace catgate

#endif
