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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "catgate/errors.h"
#include "catgate/fock_ops.h"
#include "catgate/measurement.h"

namespace catgate {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Ensemble components lighter than this fraction of the trace are dropped.
constexpr double kPruneFraction = 1e-18;

void check_spec(const CircuitSpec &spec) {
    if (!(spec.r > 0.0 && spec.r <= 0.5)) {
        std::ostringstream msg;
        msg << "tap reflectivity r = " << spec.r << " outside (0, 0.5]";
        throw ConfigError(msg.str());
    }
    if (!std::isfinite(spec.alpha.real()) || !std::isfinite(spec.alpha.imag())) {
        throw ConfigError("alpha must be finite");
    }
    if (spec.homodyne_window < 0.0) {
        throw ConfigError("homodyne window must be non-negative");
    }
    if (spec.ancilla_cutoff < 0) {
        throw ConfigError("ancilla cutoff must be non-negative");
    }
}

MixedState prune(const MixedState &s) {
    const double tr = s.trace();
    std::vector<PureFockState> kept;
    for (const auto &c : s.components()) {
        if (c.norm_squared() > kPruneFraction * tr) {
            kept.push_back(c);
        }
    }
    if (kept.empty()) {
        kept.push_back(s.components().front());
    }
    return MixedState(std::move(kept));
}

// Running record of cutoffs and truncation diagnostics for one simulation.
class Tracker {
   public:
    explicit Tracker(DetectorModel detector) { diag_.detector = detector; }

    void note(const MixedState &s) { diag_.max_tail_mass = std::max(diag_.max_tail_mass, s.max_tail_mass()); }
    void note(const PureFockState &s) { diag_.max_tail_mass = std::max(diag_.max_tail_mass, s.max_tail_mass()); }
    void multiply(double w) { probability_ *= w; }

    void set_cutoffs(std::vector<int> c) { diag_.cutoffs = std::move(c); }
    double probability() const { return probability_; }

    Diagnostics finish(const MixedState &out) {
        note(out);
        diag_.tail_mass = out.tail_masses();
        return diag_;
    }

   private:
    Diagnostics diag_;
    double probability_ = 1.0;
};

int resolve_ancilla_cutoff(const CircuitSpec &spec, double amplitude) {
    return spec.ancilla_cutoff > 0 ? spec.ancilla_cutoff : ancilla_cutoff_for(amplitude);
}

std::vector<int> resolve_signal_cutoffs(const CircuitSpec &spec, std::vector<int> policy) {
    if (spec.signal_cutoffs.empty()) {
        return policy;
    }
    if (spec.signal_cutoffs.size() != policy.size()) {
        throw ConfigError("signal cutoff list has the wrong number of modes");
    }
    return spec.signal_cutoffs;
}

MixedState add_vacuum(const MixedState &s, int cutoff) {
    const PureFockState vac = PureFockState::vacuum({cutoff});
    return s.map([&](const PureFockState &c) { return tensor(c, vac); });
}

MixedState displace_all(const MixedState &s, std::size_t mode, Complex beta) {
    const CMatrix d = displacement_matrix(beta, s.cutoffs()[mode]);
    return displace(s, mode, d);
}

MixedState split_all(const MixedState &s, const BeamSplitter &bs, std::size_t mode_a, std::size_t mode_b) {
    return bs.apply(s, mode_a, mode_b);
}

// Detects `mode`, removes it and folds the outcome weight into the tracker.
MixedState detect(const MixedState &s, std::size_t mode, DetectorModel detector, Tracker &tracker) {
    Outcome<MixedState> o = detector == DetectorModel::Fock1Projection ? project_fock(s, mode, 1)
                                                                       : apd_click_components(s, mode);
    const double in_trace = s.trace();
    if (o.state.trace() < kZeroNorm * kZeroNorm || in_trace <= 0.0) {
        throw ZeroNorm("detector outcome has zero probability");
    }
    tracker.multiply(o.state.trace() / in_trace);
    return prune(o.state);
}

MixedState homodyne(const MixedState &s, std::size_t mode, Quadrature quadrature, double q, double window,
                    Tracker &tracker) {
    Outcome<MixedState> o = window > 0.0 ? project_quadrature_window(s, mode, quadrature, q, window)
                                         : project_quadrature(s, mode, quadrature, q);
    const double in_trace = s.trace();
    if (o.state.trace() < kZeroNorm * kZeroNorm) {
        throw ZeroNorm("homodyne outcome has zero weight");
    }
    tracker.multiply(o.state.trace() / in_trace);
    return o.state;
}

void finish_report(RunReport &rep, const MixedState &out, const PureFockState &target, Tracker &tracker) {
    rep.output = out;
    rep.target = target;
    rep.success_probability = tracker.probability();
    rep.fidelity_vs_ideal = fidelity(target, out);
    rep.purity = out.purity();
    rep.diagnostics = tracker.finish(out);
}

// Subtraction in the interferometer arm: D(g) -> tap -> detect -> D(-g) on mode 0.
MixedState arm_subtraction(const MixedState &s, Complex g, double r, int ancilla_cutoff, DetectorModel detector,
                           Tracker &tracker) {
    const std::size_t anc = s.cutoffs().size();
    MixedState m = displace_all(s, 0, g);
    m = add_vacuum(m, ancilla_cutoff);
    const BeamSplitter tap(ancilla_cutoff, m.cutoffs()[0], std::sqrt(1.0 - r * r));
    m = split_all(m, tap, anc, 0);
    tracker.note(m);
    m = detect(m, anc, detector, tracker);
    return displace_all(m, 0, -g);
}


// Largest interferometer-arm amplitude during the cphase circuit.
double cphase_arm_amplitude(Complex alpha, Complex gamma1, Complex gamma2) {
    double m = kSqrt2 * std::abs(alpha);
    for (double s : {2.0, 0.0, -2.0}) {
        for (Complex g : {gamma1, gamma2}) {
            m = std::max(m, std::abs(s * alpha + g) * kInvSqrt2);
        }
    }
    return m;
}

struct CPhaseCore {
    MixedState state;
    CPhaseParams params;
    std::vector<int> cutoffs;
};

CPhaseCore cphase_fig2_core(const CircuitSpec &spec, const CoherentRegister &input, double phi, Tracker &tracker) {
    const CPhaseParams params = solve_cphase_gammas(input.alpha(), phi);
    const std::vector<int> cut =
        resolve_signal_cutoffs(spec, cphase_signal_cutoffs(input.alpha(), params.gamma1, params.gamma2));
    const int anc = resolve_ancilla_cutoff(spec, spec.r * cphase_arm_amplitude(input.alpha(), params.gamma1,
                                                                               params.gamma2));
    tracker.set_cutoffs({cut[0], cut[1], anc});

    MixedState m(to_fock(input, cut));
    const BeamSplitter in(cut[0], cut[1], kInvSqrt2);
    const BeamSplitter out(cut[1], cut[0], kInvSqrt2);
    m = split_all(m, in, 0, 1);
    tracker.note(m);
    m = arm_subtraction(m, params.gamma1 * kInvSqrt2, spec.r, anc, spec.detector, tracker);
    m = arm_subtraction(m, params.gamma2 * kInvSqrt2, spec.r, anc, spec.detector, tracker);
    m = split_all(m, out, 1, 0);
    return {m, params, cut};
}

CoherentQubit normalized_input(const CoherentQubit &q) {
    if (q.norm_squared() < kZeroNorm * kZeroNorm) {
        throw ZeroNorm("input state has zero norm");
    }
    return q.normalized_copy();
}

RunReport base_report(const CircuitSpec &spec, Architecture arch) {
    RunReport rep;
    rep.architecture = arch;
    rep.r = spec.r;
    rep.phi = spec.phi;
    rep.alpha = std::abs(spec.alpha);
    return rep;
}

}  // namespace

std::string_view architecture_name(Architecture a) {
    switch (a) {
        case Architecture::PhaseFig1:
            return "phase_fig1";
        case Architecture::CPhaseFig2:
            return "cphase_fig2";
        case Architecture::CPhaseFig3:
            return "cphase_fig3";
        case Architecture::HadamardFig4:
            return "hadamard_fig4";
        case Architecture::HadamardExact:
            return "hadamard_exact";
    }
    return "unknown";
}

std::optional<Architecture> parse_architecture(std::string_view name) {
    for (Architecture a : {Architecture::PhaseFig1, Architecture::CPhaseFig2, Architecture::CPhaseFig3,
                           Architecture::HadamardFig4, Architecture::HadamardExact}) {
        if (architecture_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

std::string_view detector_name(DetectorModel d) {
    return d == DetectorModel::OnOffPovm ? "onoff" : "fock1";
}

std::optional<DetectorModel> parse_detector(std::string_view name) {
    if (name == "onoff" || name == "apd") {
        return DetectorModel::OnOffPovm;
    }
    if (name == "fock1") {
        return DetectorModel::Fock1Projection;
    }
    return std::nullopt;
}

int ancilla_cutoff_for(double amplitude) {
    int n = 8;
    while (coherent_truncation_loss(amplitude, n) > 1e-12) {
        ++n;
    }
    return n;
}

std::vector<int> cphase_signal_cutoffs(Complex alpha, Complex gamma1, Complex gamma2) {
    return {default_cutoff(cphase_arm_amplitude(alpha, gamma1, gamma2)), default_cutoff(kSqrt2 * std::abs(alpha))};
}

RunReport simulate_phase_fig1(const CircuitSpec &spec, const CoherentQubit &raw_input) {
    check_spec(spec);
    const CoherentQubit input = normalized_input(raw_input);
    const PhaseGateParams params = solve_phase_gamma(input.alpha, spec.phi);
    const Complex a = input.alpha;
    const Complex g = params.gamma;
    const double mu = std::max({std::abs(a), std::abs(a + g), std::abs(-a + g)});
    const std::vector<int> cut = resolve_signal_cutoffs(spec, {default_cutoff(mu)});
    const int anc = resolve_ancilla_cutoff(spec, spec.r * std::max(std::abs(a + g), std::abs(-a + g)));

    Tracker tracker(spec.detector);
    tracker.set_cutoffs({cut[0], anc});
    MixedState m(to_fock(input, cut));
    m = arm_subtraction(m, g, spec.r, anc, spec.detector, tracker);

    RunReport rep = base_report(spec, Architecture::PhaseFig1);
    rep.phi = params.phi;
    rep.conditional_norm_gain = ideal_phase_gate(input, g).conditional_norm_gain;
    finish_report(rep, m, to_fock(phase_gate_target(input, params.phi), cut), tracker);
    return rep;
}

RunReport simulate_cphase_fig2(const CircuitSpec &spec, const CoherentRegister &raw_input) {
    check_spec(spec);
    if (raw_input.n_modes() != 2) {
        throw std::invalid_argument("cphase needs a two-mode register");
    }
    const CoherentRegister input = raw_input.normalized();
    Tracker tracker(spec.detector);
    const CPhaseCore core = cphase_fig2_core(spec, input, spec.phi, tracker);

    RunReport rep = base_report(spec, Architecture::CPhaseFig2);
    rep.phi = core.params.phi;
    rep.conditional_norm_gain = ideal_cphase(input, core.params.gamma1, core.params.gamma2).conditional_norm_gain;
    finish_report(rep, core.state, to_fock(cphase_target(input, core.params.phi), core.cutoffs), tracker);
    return rep;
}

RunReport simulate_cphase_fig3(const CircuitSpec &spec, const CoherentRegister &raw_input) {
    check_spec(spec);
    if (raw_input.n_modes() != 2) {
        throw std::invalid_argument("cphase needs a two-mode register");
    }
    const CoherentRegister input = raw_input.normalized();
    const Complex a = input.alpha();
    const CPhaseParams params = solve_cphase_gammas(a, spec.phi);
    const double r = spec.r;
    const std::vector<int> cut = resolve_signal_cutoffs(spec, {default_cutoff(std::abs(a)), default_cutoff(std::abs(a))});

    // Mixed tap amplitude r (a' + b') / sqrt 2 and displaced ancillas r (a' + b' + gamma) / 2.
    double anc_amp = kSqrt2 * r * std::abs(a);
    for (double s : {2.0, 0.0, -2.0}) {
        for (Complex g : {params.gamma1, params.gamma2}) {
            anc_amp = std::max(anc_amp, 0.5 * r * std::abs(s * a + g));
        }
    }
    const int anc = resolve_ancilla_cutoff(spec, anc_amp);
    const double t_tap = std::sqrt(1.0 - r * r);

    Tracker tracker(spec.detector);
    tracker.set_cutoffs({cut[0], cut[1], anc});

    // Modes: 0 = a, 1 = b, 2 = c (tap of a), 3 = d (tap of b).
    PureFockState psi = tensor(tensor(to_fock(input, cut), PureFockState::vacuum({anc})), PureFockState::vacuum({anc}));
    psi = BeamSplitter(anc, cut[0], t_tap).apply(psi, 2, 0);
    psi = BeamSplitter(anc, cut[1], t_tap).apply(psi, 3, 1);
    const BeamSplitter balanced(anc, anc, kInvSqrt2);
    psi = balanced.apply(psi, 2, 3);
    tracker.note(psi);

    // Keep the (c + d) port, split it again against a fresh vacuum e (mode 3).
    MixedState m = prune(trace_out(MixedState(std::move(psi)), 3));
    m = add_vacuum(m, anc);
    m = split_all(m, balanced, 3, 2);
    m = displace_all(m, 2, 0.5 * r * params.gamma1);
    m = displace_all(m, 3, 0.5 * r * params.gamma2);
    tracker.note(m);
    m = detect(m, 2, spec.detector, tracker);
    m = detect(m, 2, spec.detector, tracker);

    RunReport rep = base_report(spec, Architecture::CPhaseFig3);
    rep.phi = params.phi;
    rep.conditional_norm_gain = ideal_cphase(input, params.gamma1, params.gamma2).conditional_norm_gain;
    finish_report(rep, m, to_fock(cphase_target(input, params.phi), cut), tracker);
    return rep;
}

RunReport simulate_hadamard(const CircuitSpec &spec, const CoherentQubit &input) {
    return simulate_hadamard(spec, input, CoherentQubit{spec.alpha, 1.0, 1.0});
}

RunReport simulate_hadamard(const CircuitSpec &spec, const CoherentQubit &raw_input, const CoherentQubit &raw_resource) {
    check_spec(spec);
    HadamardRequest request = spec.hadamard;
    request.alpha = std::abs(spec.alpha);
    if (std::abs(spec.alpha.imag()) > 0.0 || spec.alpha.real() <= 0.0) {
        throw InfeasibleCondition("Hadamard needs a real positive resource amplitude");
    }
    const bool exact = spec.architecture == Architecture::HadamardExact;
    if (exact && request.variant == HadamardVariant::Approx) {
        request.variant = HadamardVariant::ExactHomodyneP;
    }
    if (!exact) {
        request.variant = HadamardVariant::Approx;
    }
    const HadamardParams params = solve_hadamard(request);
    const CoherentQubit input = normalized_input(raw_input);
    const double a = params.alpha;
    if (std::abs(raw_resource.alpha - Complex(a)) > 1e-12 * std::max(1.0, a)) {
        throw InfeasibleCondition("Hadamard resource amplitude must equal alpha");
    }
    const CoherentQubit resource = normalized_input(raw_resource);
    const double q = spec.homodyne_q.value_or(params.q);

    RunReport rep = base_report(spec, spec.architecture);
    rep.q = q;
    rep.phi = std::numbers::pi;
    Tracker tracker(spec.detector);

    if (exact) {
        if (std::abs(input.alpha - Complex(a)) > 1e-12 * std::max(1.0, a)) {
            throw InfeasibleCondition("exact Hadamard needs the input and resource amplitudes to match");
        }
        const CoherentRegister joint =
            tensor(CoherentRegister(a, {input.x, input.y}), CoherentRegister(a, {resource.x, resource.y}));
        CPhaseCore core = cphase_fig2_core(spec, joint, std::numbers::pi, tracker);
        MixedState m = std::move(core.state);
        if (params.variant == HadamardVariant::ExactEvenFock) {
            if (params.even_n > core.cutoffs[0]) {
                throw CutoffTooSmall("even-Fock outcome exceeds the input-mode cutoff");
            }
            const double before = m.trace();
            Outcome<MixedState> o = project_fock(m, 0, params.even_n);
            if (o.state.trace() < kZeroNorm * kZeroNorm) {
                throw ZeroNorm("even-Fock outcome has zero probability");
            }
            tracker.multiply(o.state.trace() / before);
            m = o.state;
        } else {
            m = homodyne(m, 0, params.quadrature, q, spec.homodyne_window, tracker);
        }
        rep.conditional_norm_gain = run_ideal_hadamard(input, params).conditional_norm_gain;
        const std::vector<int> out_cut{core.cutoffs[1]};
        finish_report(rep, m, to_fock(ideal_hadamard_target(CoherentQubit{a, input.x, input.y}), out_cut), tracker);
        return rep;
    }

    if (std::abs(input.alpha - Complex(0.5 * params.beta)) > 1e-9 * std::max(1.0, params.beta)) {
        std::ostringstream msg;
        msg << "approximate Hadamard displaces the input by its own amplitude, so beta = 2 alpha_in; got beta = "
            << params.beta << " with alpha_in = " << std::abs(input.alpha);
        throw InfeasibleCondition(msg.str());
    }
    const double b_in = 0.5 * params.beta;
    const double r = spec.r;
    const std::vector<int> cut =
        resolve_signal_cutoffs(spec, {default_cutoff(a), default_cutoff(std::max(params.beta, b_in))});
    const int anc = resolve_ancilla_cutoff(spec, r * std::max(a, params.beta));
    tracker.set_cutoffs({cut[0], cut[1], anc});
    rep.requested_gamma = params.gamma_weight;

    // Modes: 0 = resource, 1 = input, 2 = tap of 0, 3 = tap of 1.
    const std::vector<int> res_cut{cut[0]};
    const std::vector<int> in_cut{cut[1]};
    PureFockState psi = tensor(to_fock(resource, res_cut), to_fock(input, in_cut));
    psi = displace(psi, 1, Complex(b_in));
    psi = tensor(tensor(psi, PureFockState::vacuum({anc})), PureFockState::vacuum({anc}));
    const double t_tap = std::sqrt(1.0 - r * r);
    psi = BeamSplitter(anc, cut[0], t_tap).apply(psi, 2, 0);
    psi = BeamSplitter(anc, cut[1], t_tap).apply(psi, 3, 1);
    // Port 2 now carries t_G c + r_G d, i.e. r (Gamma a + b) up to normalization.
    const BeamSplitter weight(anc, anc, params.t_gamma);
    psi = weight.apply(psi, 2, 3);
    rep.achieved_gamma = gamma_from_transmissivity(weight.transmissivity());
    tracker.note(psi);

    MixedState m = detect(MixedState(std::move(psi)), 2, spec.detector, tracker);
    m = prune(trace_out(m, 2));
    m = homodyne(m, 1, Quadrature::X, q, spec.homodyne_window, tracker);

    rep.conditional_norm_gain = run_ideal_hadamard(input, params).conditional_norm_gain;
    finish_report(rep, m, to_fock(ideal_hadamard_target(CoherentQubit{a, input.x, input.y}), res_cut), tracker);
    return rep;
}

RunReport simulate(const CircuitSpec &spec, const CoherentRegister &input) {
    switch (spec.architecture) {
        case Architecture::PhaseFig1:
            return simulate_phase_fig1(spec, CoherentQubit::from(input));
        case Architecture::CPhaseFig2:
            return simulate_cphase_fig2(spec, input);
        case Architecture::CPhaseFig3:
            return simulate_cphase_fig3(spec, input);
        case Architecture::HadamardFig4:
        case Architecture::HadamardExact:
            return simulate_hadamard(spec, CoherentQubit::from(input));
    }
    throw std::invalid_argument("unknown architecture");
}

std::string_view sweep_axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::R:
            return "r";
        case SweepAxis::Gamma:
            return "Gamma";
        case SweepAxis::Phi:
            return "phi";
        case SweepAxis::Alpha:
            return "alpha";
    }
    return "unknown";
}

std::optional<SweepAxis> parse_sweep_axis(std::string_view name) {
    for (SweepAxis a : {SweepAxis::R, SweepAxis::Gamma, SweepAxis::Phi, SweepAxis::Alpha}) {
        if (sweep_axis_name(a) == name) {
            return a;
        }
    }
    if (name == "gamma") {
        return SweepAxis::Gamma;
    }
    return std::nullopt;
}

CircuitSpec with_axis_value(CircuitSpec spec, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::R:
            spec.r = value;
            break;
        case SweepAxis::Gamma:
            spec.hadamard.gamma_weight = value;
            break;
        case SweepAxis::Phi:
            spec.phi = value;
            break;
        case SweepAxis::Alpha:
            spec.alpha = value;
            break;
    }
    return spec;
}

std::vector<RunReport> sweep(const CircuitSpec &spec_template, const CoherentRegister &input, SweepAxis axis,
                             const std::vector<double> &values, unsigned threads) {
    std::vector<RunReport> out(values.size());
    auto run_point = [&](std::size_t i) {
        const CircuitSpec spec = with_axis_value(spec_template, axis, values[i]);
        RunReport &rep = out[i];
        try {
            CoherentRegister in = input;
            // The approximate Hadamard input keeps its own amplitude beta / 2.
            if (axis == SweepAxis::Alpha && spec.architecture != Architecture::HadamardFig4) {
                in = CoherentRegister(values[i], input.coeffs());
            }
            rep = simulate(spec, in);
        } catch (const CatgateError &e) {
            rep = base_report(spec, spec.architecture);
            rep.status = std::string(e.kind());
            rep.error = e.what();
        } catch (const std::exception &e) {
            rep = base_report(spec, spec.architecture);
            rep.status = "error";
            rep.error = e.what();
        }
        if (spec.architecture == Architecture::HadamardFig4 && !rep.ok()) {
            rep.requested_gamma = spec.hadamard.gamma_weight;
        }
    };

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, values.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            run_point(i);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < values.size(); i = next++) {
                run_point(i);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    return out;
}

namespace {

CMatrix padded_density(const MixedState &s, std::span<const int> cutoffs) {
    std::vector<PureFockState> comps;
    for (const auto &c : s.components()) {
        comps.push_back(c.padded(cutoffs));
    }
    return MixedState(std::move(comps)).to_density().matrix();
}

CMatrix psd_sqrt(const CMatrix &m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double mutual_fidelity(const MixedState &a, const MixedState &b) {
    if (a.is_pure()) {
        return fidelity(a.components().front(), b);
    }
    if (b.is_pure()) {
        return fidelity(b.components().front(), a);
    }
    if (a.cutoffs().size() != b.cutoffs().size()) {
        throw std::invalid_argument("mutual_fidelity needs states on the same modes");
    }
    std::vector<int> cut(a.cutoffs().size());
    for (std::size_t k = 0; k < cut.size(); ++k) {
        cut[k] = std::max(a.cutoffs()[k], b.cutoffs()[k]);
    }
    const double ta = a.trace();
    const double tb = b.trace();
    if (ta < kZeroNorm * kZeroNorm || tb < kZeroNorm * kZeroNorm) {
        throw ZeroNorm("fidelity of a zero-trace state");
    }
    const CMatrix sa = psd_sqrt(padded_density(a, cut) / ta);
    const CMatrix inner = sa * (padded_density(b, cut) / tb) * sa;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly);
    const double root_sum = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return root_sum * root_sum;
}

PureFockState operator_pipeline_phase(const PureFockState &input, Complex gamma) {
    return displace(annihilate(displace(input, 0, gamma), 0), 0, -gamma);
}

PureFockState operator_pipeline_cphase(const PureFockState &input, Complex gamma1, Complex gamma2) {
    const auto &cut = input.cutoffs();
    PureFockState psi = BeamSplitter(cut[0], cut[1], kInvSqrt2).apply(input, 0, 1);
    for (Complex g : {gamma1, gamma2}) {
        psi = displace(annihilate(displace(psi, 0, g * kInvSqrt2), 0), 0, -g * kInvSqrt2);
    }
    return BeamSplitter(cut[1], cut[0], kInvSqrt2).apply(psi, 1, 0);
}

}  // namespace catgate
