// Copyright 2026 The fockmzi Authors
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fockmzi/cli.hpp"

namespace {

void add_state_options(CLI::App &cmd, fockmzi::cli::RunConfig &config) {
    cmd.add_option("--family", config.family,
                   "vacuum | coherent | number | twin-fock | noon | arcsine | entangled-coherent");
    cmd.add_option("--n", config.n, "photon number(s), comma separated (number takes n_a,n_b)");
    cmd.add_option("--alpha", config.alpha, "coherent amplitude (real)");
    cmd.add_option("--phi-n", config.phi_n, "NOON relative phase (default 0 for even N, pi/2 for odd N)");
    cmd.add_option("--rel-phase", config.rel_phase, "entangled-coherent branch phase");
    cmd.add_option("--theta", config.theta, "entangled-coherent rotation of the b branch");
    cmd.add_option("--tail-eps", config.tail_epsilon, "Poisson tail bound for coherent truncation");
}

void add_output_options(CLI::App &cmd, fockmzi::cli::RunConfig &config) {
    cmd.add_option("--out", config.output_path, "output file ('-' for stdout)");
    cmd.add_option("--format", config.format, "output format (default csv)")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, fockmzi::cli::Format>{{"csv", fockmzi::cli::Format::Csv},
                                                        {"json", fockmzi::cli::Format::Json}}))
        ->option_text("csv|json");
}

void add_interferometer_options(CLI::App &cmd, fockmzi::cli::RunConfig &config) {
    cmd.add_option("--bs1", config.bs1, "first splitter: i-reflect | real-asymmetric");
    cmd.add_option("--bs2", config.bs2, "second splitter: i-reflect | real-asymmetric");
    cmd.add_option("--step", config.step, "central-difference step (radians)");
}

}  // namespace

int main(int argc, char **argv) {
    using fockmzi::cli::Command;
    fockmzi::cli::RunConfig config;

    CLI::App app{"Two-mode Fock-space interferometry simulator"};
    app.require_subcommand(1);

    auto *state = app.add_subcommand("state", "dump the amplitudes of a state family");
    add_state_options(*state, config);
    add_output_options(*state, config);

    auto *signal = app.add_subcommand("signal", "sweep an observable over the interferometer phase");
    add_state_options(*signal, config);
    add_output_options(*signal, config);
    add_interferometer_options(*signal, config);
    signal->add_option("--observable", config.observable, "j | j2 | parity_b | sigma_n");
    signal->add_option("--phi-min", config.phi_min, "start of the phase grid (default 0)");
    signal->add_option("--phi-max", config.phi_max, "end of the phase grid (default 2 pi)");
    signal->add_option("--steps", config.phi_steps, "number of grid points (endpoints included)");

    auto *uncertainty = app.add_subcommand("uncertainty", "twin-Fock phase uncertainty against 2N");
    std::string uncertainty_family = "twin-fock";
    uncertainty->add_option("--family", uncertainty_family, "twin-fock");
    uncertainty->add_option("--n", config.n, "photon numbers N, comma separated (default 1..20)");
    uncertainty->add_option("--phi", config.phis, "phase(s) at which to estimate (default 0.0001 0.05)")
        ->delimiter(',');
    add_output_options(*uncertainty, config);
    add_interferometer_options(*uncertainty, config);

    auto *joint = app.add_subcommand("joint", "joint photon-number distribution of a state family");
    add_state_options(*joint, config);
    add_output_options(*joint, config);

    auto *verify = app.add_subcommand("verify", "check the simulator against closed-form results");
    add_output_options(*verify, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return fockmzi::cli::kConfigError;
    }

    if (state->parsed()) config.command = Command::State;
    if (signal->parsed()) config.command = Command::Signal;
    if (uncertainty->parsed()) {
        config.command = Command::Uncertainty;
        config.family = uncertainty_family;
    }
    if (joint->parsed()) config.command = Command::Joint;
    if (verify->parsed()) config.command = Command::Verify;

    const auto result = fockmzi::cli::run(config);
    if (!result.message.empty()) {
        std::cerr << result.message << '\n';
    }
    if (result.exit_code == fockmzi::cli::kConfigError || result.exit_code == fockmzi::cli::kNumericalFailure) {
        return result.exit_code;
    }
    if (config.output_path == "-") {
        std::cout << result.output;
    } else {
        std::ofstream out(config.output_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: --out: cannot open '" << config.output_path << "'\n";
            return fockmzi::cli::kConfigError;
        }
        out << result.output;
        if (config.command == Command::Verify) {
            std::cout << result.output;
        }
    }
    return result.exit_code;
}
