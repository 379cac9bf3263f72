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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "catgate/errors.h"
#include "catgate/experiment.h"

namespace catgate::cli {

namespace {

std::string format_complex(Complex c) {
    std::string out = format_number(c.real());
    const double im = c.imag();
    out += std::signbit(im) ? "-" : "+";
    out += format_number(std::abs(im));
    out += "i";
    return out;
}

void field(std::ostream &out, std::string_view name, const std::string &value) {
    out << std::left << std::setw(24) << name << value << '\n';
}

int report_error(const CatgateError &e, Streams io) {
    io.err << "error: " << e.kind() << ": " << e.what() << '\n';
    return exit_code_for_kind(e.kind());
}

void render(const RunReport &rep, const CircuitSpec &spec, std::ostream &out) {
    field(out, "architecture", std::string(architecture_name(spec.architecture)));
    field(out, "detector", std::string(detector_name(spec.detector)));
    field(out, "alpha", format_number(spec.alpha.real()));
    field(out, "phi", format_number(spec.phi));
    field(out, "r", format_number(spec.r));
    if (spec.architecture == Architecture::HadamardFig4 || spec.architecture == Architecture::HadamardExact) {
        field(out, "variant", std::string(hadamard_variant_name(spec.hadamard.variant)));
        if (rep.ok()) {
            field(out, "Gamma", format_number(rep.achieved_gamma));
            field(out, "q", format_number(rep.q));
        }
    }
    field(out, "status", rep.status);
    if (!rep.ok()) {
        field(out, "error", rep.error);
        return;
    }
    field(out, "success_probability", format_number(rep.success_probability));
    field(out, "fidelity", format_number(rep.fidelity_vs_ideal));
    field(out, "conditional_norm_gain", format_number(rep.conditional_norm_gain));
    field(out, "purity", format_number(rep.purity));
    field(out, "tail_mass_max", format_number(rep.diagnostics.max_tail_mass));
    std::string cut;
    for (int c : rep.diagnostics.cutoffs) {
        cut += (cut.empty() ? "" : ",") + std::to_string(c);
    }
    field(out, "cutoffs", cut);
}

RunReport run_point(const CircuitSpec &spec, const CoherentRegister &input) {
    try {
        return simulate(spec, input);
    } catch (const CatgateError &e) {
        RunReport rep;
        rep.architecture = spec.architecture;
        rep.status = e.kind();
        rep.error = e.what();
        return rep;
    }
}

/// Writes `text` to `path` in one go; throws ConfigError when it cannot.
void write_file(const std::string &path, const std::string &text, bool append) {
    std::ofstream f(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
    if (!f) {
        throw ConfigError(path + ": cannot open output file");
    }
    f << text;
    if (!f.flush()) {
        throw ConfigError(path + ": write failed");
    }
}

bool empty_or_missing(const std::string &path) {
    std::error_code ec;
    return !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
}

}  // namespace

std::optional<ExperimentConfig> load_config(const std::string &path, Streams io, int &exit_code) {
    try {
        return ExperimentConfig::load(path);
    } catch (const CatgateError &e) {
        exit_code = report_error(e, io);
        return std::nullopt;
    }
}

int cmd_solve(const SolveArgs &args, Streams io) {
    try {
        std::ostringstream out;
        const Complex alpha = parse_complex(args.alpha);
        if (args.gate == "phase" || args.gate == "cphase") {
            const double phi = parse_angle(args.phi);
            field(out, "gate", args.gate);
            field(out, "alpha", format_complex(alpha));
            field(out, "phi", format_number(phi));
            if (args.gate == "phase") {
                const auto p = solve_phase_gamma(alpha, phi);
                field(out, "gamma", format_complex(p.gamma));
                field(out, "residual", format_number(p.residual()));
            } else {
                const auto p = solve_cphase_gammas(alpha, phi);
                field(out, "gamma1", format_complex(p.gamma1));
                field(out, "gamma2", format_complex(p.gamma2));
                field(out, "sum_residual", format_number(p.sum_residual()));
                field(out, "product_residual", format_number(p.product_residual()));
            }
        } else if (args.gate == "hadamard") {
            if (alpha.imag() != 0.0) {
                throw ConfigError("hadamard: alpha must be real");
            }
            HadamardRequest req;
            req.alpha = alpha.real();
            req.even_n = args.even_n;
            if (args.variant == hadamard_variant_name(HadamardVariant::Approx)) {
                req.variant = HadamardVariant::Approx;
                if (args.gamma.empty() == args.t_gamma.empty()) {
                    throw ConfigError("hadamard approx: give exactly one of --Gamma and --t-Gamma");
                }
                req.beta = args.beta.empty() ? 2.0 * req.alpha : parse_complex(args.beta).real();
                if (!args.gamma.empty()) {
                    req.gamma_weight = parse_complex(args.gamma).real();
                    if (req.gamma_weight <= 0.0) {
                        throw InfeasibleCondition("Gamma must be positive");
                    }
                } else {
                    req.t_gamma = parse_complex(args.t_gamma).real();
                }
            } else if (args.variant == hadamard_variant_name(HadamardVariant::ExactHomodyneP)) {
                req.variant = HadamardVariant::ExactHomodyneP;
            } else if (args.variant == hadamard_variant_name(HadamardVariant::ExactEvenFock)) {
                req.variant = HadamardVariant::ExactEvenFock;
            } else {
                throw ConfigError("unknown hadamard variant '" + args.variant + "'");
            }
            const auto p = solve_hadamard(req);
            field(out, "gate", "hadamard");
            field(out, "variant", std::string(hadamard_variant_name(p.variant)));
            field(out, "alpha", format_number(p.alpha));
            if (p.variant == HadamardVariant::Approx) {
                field(out, "beta", format_number(p.beta));
                field(out, "Gamma", format_number(p.gamma_weight));
                field(out, "t_Gamma", format_number(p.t_gamma));
                field(out, "q", format_number(p.q));
                field(out, "quadrature", "x");
                field(out, "tap_residual", format_number(p.tap_residual()));
            } else if (p.variant == HadamardVariant::ExactHomodyneP) {
                field(out, "q", format_number(p.q));
                field(out, "quadrature", "p");
            } else {
                field(out, "even_n", std::to_string(p.even_n));
            }
            field(out, "condition_residual", format_number(p.condition_residual()));
        } else {
            throw ConfigError("unknown gate '" + args.gate + "' (phase, cphase, hadamard)");
        }
        io.out << out.str();
        return kExitOk;
    } catch (const CatgateError &e) {
        return report_error(e, io);
    }
}

int cmd_run(const ExperimentConfig &config, const std::string &out_path, Streams io) {
    const RunReport rep = run_point(config.spec, config.input());
    if (!io.quiet) {
        render(rep, config.spec, io.out);
    }
    const std::string path = out_path.empty() ? config.out : out_path;
    if (!path.empty()) {
        std::string text;
        if (empty_or_missing(path)) {
            text = csv_header() + "\n";
        }
        text += to_csv_line(CsvRow::from(rep, config.spec)) + "\n";
        try {
            write_file(path, text, true);
        } catch (const CatgateError &e) {
            return report_error(e, io);
        }
    }
    if (!rep.ok()) {
        io.err << "error: " << rep.status << ": " << rep.error << '\n';
        return exit_code_for_kind(rep.status);
    }
    return kExitOk;
}

int cmd_sweep(const ExperimentConfig &config, const std::string &out_path, Streams io) {
    if (!config.sweep_axis) {
        io.err << "error: ConfigError: sweep needs sweep_axis and sweep_values in the config\n";
        return kExitConfig;
    }
    const auto reports = sweep(config.spec, config.input(), *config.sweep_axis, config.sweep_values, config.threads);

    std::string text = csv_header() + "\n";
    int failed = 0;
    std::string first_failure;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const CircuitSpec point = with_axis_value(config.spec, *config.sweep_axis, config.sweep_values[i]);
        text += to_csv_line(CsvRow::from(reports[i], point)) + "\n";
        if (!reports[i].ok()) {
            if (failed++ == 0) {
                first_failure = reports[i].status;
            }
            io.err << "point " << i << " (" << sweep_axis_name(*config.sweep_axis) << " = "
                   << format_number(config.sweep_values[i]) << "): " << reports[i].status << ": " << reports[i].error
                   << '\n';
        }
    }
    const std::string path = out_path.empty() ? config.out : out_path;
    if (path.empty()) {
        io.out << text;
    } else {
        try {
            write_file(path, text, false);
        } catch (const CatgateError &e) {
            return report_error(e, io);
        }
        if (!io.quiet) {
            io.out << "wrote " << reports.size() << " rows to " << path << '\n';
        }
    }
    if (failed > 0) {
        return exit_code_for_kind(first_failure);
    }
    return kExitOk;
}

}  // namespace catgate::cli
