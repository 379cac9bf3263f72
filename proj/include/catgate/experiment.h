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

#ifndef CATGATE_EXPERIMENT_H
#define CATGATE_EXPERIMENT_H

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catgate/physical_models.h"

namespace catgate::cli {

/// Process exit codes of the catgate tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitSolver = 2,
    kExitConfig = 3,
    kExitSimulation = 4,
    kExitValidation = 5,
};

/// Maps an error kind ("DegeneratePhase", ...) to its exit code.
int exit_code_for_kind(std::string_view kind);

/// "pi", "-pi/2", "3pi/4", "2*pi" or a decimal in radians.
double parse_angle(std::string_view text);
/// "0.6", "-0.3i", "0.6-0.8i", "(0.6,-0.8)".
Complex parse_complex(std::string_view text);

/// Parsed experiment file. The format is one `key = value` per line, `#`
/// starts a comment. Keys:
///
///   gate              phase_fig1 | cphase_fig2 | cphase_fig3 | hadamard_fig4 | hadamard_exact
///   alpha             coherent amplitude (required)
///   phi               phase shift (phase and cphase gates)
///   r                 tap amplitude reflectivity (default 0.05)
///   Gamma | t_Gamma   hadamard_fig4 only, exactly one
///   beta              displaced input amplitude (hadamard_fig4, default 2 alpha)
///   variant           hadamard_exact: exact_homodyne_p | exact_even_fock
///   even_n            Fock outcome for exact_even_fock (default 2)
///   detector          fock1 | onoff
///   window            homodyne acceptance half-width (default 0)
///   homodyne_q        overrides the solved homodyne value
///   x, y              single-mode coefficients (default 1, 0)
///   c11 c10 c01 c00   two-mode coefficients (default all 1)
///   cutoffs           comma list of signal cutoffs, or auto
///   ancilla_cutoff    integer, or auto
///   sweep_axis        r | Gamma | phi | alpha
///   sweep_values      comma list
///   threads           sweep workers (0 = all cores)
///   out               CSV output path
struct ExperimentConfig {
    CircuitSpec spec;
    std::vector<Complex> coefficients;
    std::optional<SweepAxis> sweep_axis;
    std::vector<double> sweep_values;
    unsigned threads = 0;
    std::string out;

    static ExperimentConfig parse(std::string_view text, std::string_view source = "<config>");
    static ExperimentConfig load(const std::string &path);

    CoherentRegister input() const;
    bool two_mode() const;
};

struct CsvRow {
    std::string architecture;
    double alpha = 0.0;
    double phi = 0.0;
    double r = 0.0;
    std::optional<double> gamma;
    std::optional<double> q;
    std::string detector_model;
    double success_probability = 0.0;
    double fidelity = 0.0;
    double conditional_norm_gain = 0.0;
    double tail_mass_max = 0.0;
    std::string status;

    static CsvRow from(const RunReport &report, const CircuitSpec &spec);
};

/// 12 significant digits, trailing zeros dropped, locale independent.
std::string format_number(double v);
std::string csv_header();
std::string to_csv_line(const CsvRow &row);
/// Inverse of to_csv_line; throws ConfigError on malformed input.
CsvRow parse_csv_line(std::string_view line);

struct Streams {
    std::ostream &out;
    std::ostream &err;
    bool quiet = false;
};

struct SolveArgs {
    std::string gate;  // phase | cphase | hadamard
    std::string alpha = "1";
    std::string phi = "pi";
    std::string beta;
    std::string gamma;
    std::string t_gamma;
    std::string variant = "approx";
    int even_n = 2;
};

int cmd_solve(const SolveArgs &args, Streams io);

/// Runs one simulation, prints a report and appends a CSV row to `out_path`
/// (header written when the file is new or empty). Empty `out_path` falls
/// back to the config's `out`; no CSV when both are empty.
int cmd_run(const ExperimentConfig &config, const std::string &out_path, Streams io);

/// Runs the configured sweep and writes a fresh CSV, rows in value order.
int cmd_sweep(const ExperimentConfig &config, const std::string &out_path, Streams io);

struct ValidateArgs {
    std::vector<std::string> groups;         // empty = all
    std::optional<double> tolerance;         // overrides every group's bound
};

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct GroupResult {
    std::string group;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    bool pass() const;
};

std::vector<std::string> validation_groups();
/// Throws ConfigError for an unknown group name.
std::vector<GroupResult> run_validation(const ValidateArgs &args);
int cmd_validate(const ValidateArgs &args, Streams io);

/// Loads `path` and returns the config, or prints the error and returns
/// nullopt with `exit_code` set.
std::optional<ExperimentConfig> load_config(const std::string &path, Streams io, int &exit_code);

}  // namespace catgate::cli

#endif
