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

#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fockmzi/detection.hpp"
#include "fockmzi/error.hpp"
#include "fockmzi/family.hpp"
#include "fockmzi/io.hpp"
#include "fockmzi/metrology.hpp"
#include "fockmzi/optical_elements.hpp"
#include "fockmzi/verify.hpp"

namespace fockmzi::cli {

enum class Command { State, Signal, Uncertainty, Joint, Verify };
enum class Format { Csv, Json };

/// Exit statuses of the command-line tool.
enum ExitCode : int { kSuccess = 0, kVerifyFailed = 1, kConfigError = 2, kNumericalFailure = 3 };

struct RunConfig {
    Command command = Command::State;
    std::string family = "vacuum";
    std::string observable = "parity_b";
    double phi_min = 0.0;
    double phi_max = 2.0 * std::numbers::pi;
    int phi_steps = 64;
    std::optional<std::string> n;  ///< comma-separated photon numbers
    std::optional<double> alpha;
    std::optional<double> phi_n;
    double rel_phase = 0.0;
    double theta = 0.0;
    std::optional<std::string> bs1;
    std::optional<std::string> bs2;
    std::vector<double> phis = {1e-4, 0.05};  ///< uncertainty command only
    std::optional<double> step;
    double tail_epsilon = kDefaultTailEpsilon;
    std::string output_path = "-";
    Format format = Format::Csv;
};

struct RunResult {
    int exit_code = kSuccess;
    std::string output;   ///< data written to --out (or stdout)
    std::string message;  ///< diagnostics for stderr
};

namespace detail {

[[noreturn]] inline void config_error(std::string_view field, const std::string &what) {
    throw Error(ErrorCode::InvalidArgument, std::string(field) + ": " + what);
}

inline std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> values;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        const auto first = token.find_first_not_of(" \t");
        if (first == std::string::npos) {
            continue;
        }
        const auto last = token.find_last_not_of(" \t");
        token = token.substr(first, last - first + 1);
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(token, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != token.size() || token.empty()) {
            config_error("--n", "'" + token + "' is not an integer");
        }
        values.push_back(value);
    }
    return values;
}

inline std::vector<int> require_n(const RunConfig &config, std::size_t count, std::string_view family) {
    if (!config.n) {
        config_error("--n", std::string(family) + " requires --n");
    }
    auto values = parse_int_list(*config.n);
    if (values.size() != count) {
        config_error("--n", std::string(family) + " takes " + std::to_string(count) + " value(s), got " +
                                std::to_string(values.size()));
    }
    return values;
}

inline BeamSplitterConvention parse_convention(std::string_view field, const std::string &name) {
    if (name == "i-reflect") return BeamSplitterConvention::IReflect;
    if (name == "real-asymmetric") return BeamSplitterConvention::RealAsymmetric;
    config_error(field, "unknown beam-splitter convention '" + name + "' (use i-reflect or real-asymmetric)");
}

}  // namespace detail

/// Resolves the --family flag and its parameters into a StateFamily.
inline StateFamily build_family(const RunConfig &config) {
    StateFamily family;
    try {
        family.kind = parse_family(config.family);
    } catch (const Error &) {
        detail::config_error("--family", "unknown state family '" + config.family + "'");
    }
    if (!(config.tail_epsilon > 0.0 && config.tail_epsilon < 1.0)) {
        detail::config_error("--tail-eps", "must lie in (0, 1)");
    }
    family.tail_epsilon = config.tail_epsilon;
    const std::string name = config.family;
    switch (family.kind) {
        case FamilyKind::Vacuum:
            break;
        case FamilyKind::Coherent:
        case FamilyKind::EntangledCoherent:
            if (!config.alpha) {
                detail::config_error("--alpha", name + " requires --alpha");
            }
            family.alpha = *config.alpha;
            family.rel_phase = config.rel_phase;
            family.theta = config.theta;
            break;
        case FamilyKind::Number: {
            const auto values = detail::require_n(config, 2, name);
            if (values[0] < 0 || values[1] < 0) {
                detail::config_error("--n", "photon numbers must be nonnegative");
            }
            family.n_a = values[0];
            family.n_b = values[1];
            break;
        }
        case FamilyKind::TwinFock:
        case FamilyKind::Noon:
        case FamilyKind::Arcsine: {
            const auto values = detail::require_n(config, 1, name);
            if (values[0] < 1) {
                detail::config_error("--n", name + " requires N >= 1");
            }
            family.n = values[0];
            break;
        }
    }
    if (family.kind == FamilyKind::Noon) {
        family.phi_n = config.phi_n.value_or(default_noon_phase(family.n));
    }
    return family;
}

inline MziConfig build_mzi_config(const RunConfig &config, const StateFamily &family) {
    auto mzi_config = family.default_config();
    if (config.bs1) {
        mzi_config.bs1 = detail::parse_convention("--bs1", *config.bs1);
    }
    if (config.bs2) {
        mzi_config.bs2 = detail::parse_convention("--bs2", *config.bs2);
    }
    return mzi_config;
}

inline ObservableSpec build_observable(const RunConfig &config, const StateFamily &family) {
    ObservableSpec spec;
    try {
        spec.tag = parse_observable(config.observable);
    } catch (const Error &) {
        detail::config_error("--observable", "unknown observable '" + config.observable + "'");
    }
    if (spec.tag == ObservableTag::SigmaN) {
        spec.n = family.kind == FamilyKind::Number ? family.n_a + family.n_b : family.n;
    }
    return spec;
}

inline std::string cmd_state(const RunConfig &config) {
    const auto state = build_family(config).state();
    return config.format == Format::Json ? io::state_json(state).dump(2) + "\n" : io::state_csv(state);
}

inline std::string cmd_signal(const RunConfig &config) {
    const auto family = build_family(config);
    const auto mzi_config = build_mzi_config(config, family);
    const auto observable = build_observable(config, family);
    if (config.phi_steps < 2) {
        detail::config_error("--steps", "must be at least 2");
    }
    if (!(config.phi_max > config.phi_min)) {
        detail::config_error("--phi-max", "must exceed --phi-min");
    }
    const auto grid = phi_grid(config.phi_min, config.phi_max, config.phi_steps);
    const auto table = sweep_signal(family, observable, grid, mzi_config);
    return config.format == Format::Json ? io::signal_json(table).dump(2) + "\n" : io::signal_csv(table);
}

inline std::string cmd_uncertainty(const RunConfig &config) {
    if (config.family != "twin-fock") {
        detail::config_error("--family", "uncertainty sweeps support only twin-fock");
    }
    std::vector<int> ns;
    if (config.n) {
        ns = detail::parse_int_list(*config.n);
        if (ns.empty()) {
            detail::config_error("--n", "photon-number list is empty");
        }
    } else {
        for (int n = 1; n <= 20; ++n) {
            ns.push_back(n);
        }
    }
    for (int n : ns) {
        if (n < 1) {
            detail::config_error("--n", "twin-fock requires N >= 1");
        }
    }
    if (config.phis.empty()) {
        detail::config_error("--phi", "no phase given");
    }
    StateFamily family;
    family.kind = FamilyKind::TwinFock;
    const auto mzi_config = build_mzi_config(config, family);
    std::vector<SweepTable> tables;
    for (double phi : config.phis) {
        if (!(phi >= 0.0)) {
            detail::config_error("--phi", "must be nonnegative");
        }
        tables.push_back(sweep_uncertainty(phi, ns, mzi_config, config.step));
    }
    return config.format == Format::Json ? io::uncertainty_json(tables).dump(2) + "\n" : io::uncertainty_csv(tables);
}

inline std::string cmd_joint(const RunConfig &config) {
    const auto dist = joint_distribution(build_family(config).state());
    if (!(std::abs(dist.total() - 1.0) <= 1e-10)) {
        throw Error(ErrorCode::NumericalFailure, "joint distribution sums to " + io::format_double(dist.total()));
    }
    return config.format == Format::Json ? io::joint_json(dist).dump(2) + "\n" : io::joint_csv(dist);
}

inline std::string verify_text(const VerifyReport &report) {
    std::ostringstream out;
    for (const auto &check : report.checks) {
        out << (check.passed ? "PASS" : "FAIL") << "  " << check.name << "  max_error=" << io::format_double(check.max_error)
            << "  tolerance=" << io::format_double(check.tolerance);
        if (!check.detail.empty()) {
            out << "  [" << check.detail << ']';
        }
        out << '\n';
    }
    out << "twin-fock bs2 convention: " << to_string(report.bs2_probe.pinned)
        << (report.bs2_probe.found ? "" : " (probe found no match)") << '\n';
    out << (report.all_passed() ? "all checks passed" : "verification FAILED") << '\n';
    return out.str();
}

inline nlohmann::json verify_json(const VerifyReport &report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &check : report.checks) {
        checks.push_back({{"name", check.name},
                          {"max_error", io::json_number(check.max_error)},
                          {"tolerance", io::json_number(check.tolerance)},
                          {"passed", check.passed},
                          {"detail", check.detail}});
    }
    return {{"checks", std::move(checks)},
            {"twin_fock_bs2", std::string(to_string(report.bs2_probe.pinned))},
            {"passed", report.all_passed()}};
}

/// Runs one command. Errors are mapped onto exit codes: configuration
/// problems give 2, numerical failures 3, failed verification 1.
inline RunResult run(const RunConfig &config) {
    RunResult result;
    try {
        switch (config.command) {
            case Command::State: result.output = cmd_state(config); break;
            case Command::Signal: result.output = cmd_signal(config); break;
            case Command::Uncertainty: result.output = cmd_uncertainty(config); break;
            case Command::Joint: result.output = cmd_joint(config); break;
            case Command::Verify: {
                const auto report = run_verification();
                result.output = config.format == Format::Json ? verify_json(report).dump(2) + "\n" : verify_text(report);
                result.exit_code = report.all_passed() ? kSuccess : kVerifyFailed;
                break;
            }
        }
    } catch (const Error &e) {
        switch (e.code()) {
            case ErrorCode::InvalidArgument:
            case ErrorCode::NegativeCount:
            case ErrorCode::AlphaTooLarge:
            case ErrorCode::DegenerateStep:
            case ErrorCode::NonpositivePhotons:
            case ErrorCode::NotNoonForm:
                result.exit_code = kConfigError;
                break;
            default:
                result.exit_code = kNumericalFailure;
                break;
        }
        result.output.clear();
        result.message = std::string("error: ") + e.what();
    }
    return result;
}

}  // namespace fockmzi::cli
