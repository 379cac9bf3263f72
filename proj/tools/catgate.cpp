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

// catgate: solve gate parameters, run circuit simulations and sweeps, and
// validate the cross-layer invariants.
//
// Exit codes: 0 ok, 2 solver error, 3 config error, 4 simulation error,
// 5 validation failure.

#include <CLI11.hpp>

#include <iostream>

#include "catgate/experiment.h"

namespace cli = catgate::cli;

int main(int argc, char **argv) {
    CLI::App app{"catgate: probabilistic gates on coherent-state qubits"};
    app.require_subcommand(1);
    app.fallthrough();
    bool quiet = false;
    app.add_flag("--quiet,-q", quiet, "Suppress human-readable reports");

    cli::SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "Solve gate parameters and print constraint residuals");
    solve->add_option("gate", solve_args.gate, "phase | cphase | hadamard")
        ->required()
        ->check(CLI::IsMember({"phase", "cphase", "hadamard"}));
    solve->add_option("--alpha", solve_args.alpha, "Coherent amplitude (complex allowed for phase/cphase)");
    solve->add_option("--phi", solve_args.phi, "Phase shift: pi, pi/2 or radians");
    solve->add_option("--beta", solve_args.beta, "Displaced input amplitude (approx Hadamard, default 2 alpha)");
    solve->add_option("--Gamma", solve_args.gamma, "Subtraction weight Gamma (approx Hadamard)");
    solve->add_option("--t-Gamma", solve_args.t_gamma, "BS_Gamma transmissivity (approx Hadamard)");
    solve->add_option("--variant", solve_args.variant, "approx | exact_homodyne_p | exact_even_fock");
    solve->add_option("--even-n", solve_args.even_n, "Even Fock outcome for exact_even_fock");

    std::string config_path, out_path, detector;
    auto add_sim_flags = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "Experiment file (key = value)")->required();
        sub->add_option("--out", out_path, "CSV output path (overrides the config)");
        sub->add_option("--detector", detector, "Override the detector model")
            ->check(CLI::IsMember({"onoff", "fock1"}));
    };
    auto *run = app.add_subcommand("run", "Simulate one configuration and append a CSV row");
    add_sim_flags(run);
    auto *sweep = app.add_subcommand("sweep", "Simulate the configured sweep and write a fresh CSV");
    add_sim_flags(sweep);

    cli::ValidateArgs validate_args;
    double tolerance = 0.0;
    auto *validate = app.add_subcommand("validate", "Run the cross-layer invariant suite");
    validate->add_option("--group", validate_args.groups, "Only run these groups")
        ->check(CLI::IsMember(cli::validation_groups()));
    auto *tol = validate->add_option("--tolerance", tolerance, "Force one tolerance on every check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kExitConfig;
    }

    cli::Streams io{std::cout, std::cerr, quiet};
    if (*solve) {
        return cli::cmd_solve(solve_args, io);
    }
    if (*validate) {
        if (*tol) {
            validate_args.tolerance = tolerance;
        }
        return cli::cmd_validate(validate_args, io);
    }

    int code = cli::kExitOk;
    auto config = cli::load_config(config_path, io, code);
    if (!config) {
        return code;
    }
    if (!detector.empty()) {
        config->spec.detector = *catgate::parse_detector(detector);
    }
    return *run ? cli::cmd_run(*config, out_path, io) : cli::cmd_sweep(*config, out_path, io);
}
