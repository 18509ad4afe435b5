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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fockmzi/detection.hpp"
#include "fockmzi/error.hpp"
#include "fockmzi/family.hpp"
#include "fockmzi/fock_space.hpp"
#include "fockmzi/optical_elements.hpp"

namespace fockmzi {

/// Phase estimate from one observable via error propagation:
///   delta_phi = Delta O / |d<O>/d phi|.
struct UncertaintyReport {
    double phi = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    double delta_phi = 0.0;
    double derivative = 0.0;
    double step = 0.0;
    bool diverged = false;
    double sql = 0.0;
    double hl = 0.0;
    double n_total = 0.0;
};

inline double sql_baseline(double n_total) {
    if (!(n_total > 0.0)) {
        throw Error(ErrorCode::NonpositivePhotons, "SQL needs a positive photon number");
    }
    return 1.0 / std::sqrt(n_total);
}

inline double hl_baseline(double n_total) {
    if (!(n_total > 0.0)) {
        throw Error(ErrorCode::NonpositivePhotons, "HL needs a positive photon number");
    }
    return 1.0 / n_total;
}

/// Step used when none is given: the signal oscillates at a rate
/// proportional to the photon number, so the step shrinks with it.
inline double default_derivative_step(double n_total) { return 1e-5 / std::max(1.0, n_total); }

inline UncertaintyReport phase_uncertainty(const Preparation &prepare, const ObservableSpec &observable, double phi,
                                           std::optional<double> step = std::nullopt) {
    const auto centre_state = prepare(phi);
    const double n_total = mean_total_photons(centre_state);
    const double h = step.value_or(default_derivative_step(n_total));
    const double max_step = std::numbers::pi / (4.0 * std::max(1.0, n_total));
    if (!(h > 0.0) || h > max_step) {
        throw Error(ErrorCode::DegenerateStep, "derivative step " + std::to_string(h) + " outside (0, " +
                                                   std::to_string(max_step) + "]");
    }
    const auto centre = measure(centre_state, observable);
    const double plus = measure(prepare(phi + h), observable).mean;
    const double minus = measure(prepare(phi - h), observable).mean;

    UncertaintyReport report;
    report.phi = phi;
    report.mean = centre.mean;
    report.variance = centre.variance;
    report.step = h;
    report.n_total = n_total;
    report.derivative = (plus - minus) / (2.0 * h);
    const double noise = std::sqrt(centre.variance);
    report.diverged = std::abs(report.derivative) < 1e-12 * std::max(1.0, noise);
    report.delta_phi =
        report.diverged ? std::numeric_limits<double>::infinity() : noise / std::abs(report.derivative);
    if (n_total > 0.0) {
        report.sql = sql_baseline(n_total);
        report.hl = hl_baseline(n_total);
    } else {
        report.sql = report.hl = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

struct SweepRow {
    double abscissa = 0.0;
    double mean = 0.0;
    double variance = 0.0;
    std::optional<double> delta_phi;
    double sql = std::numeric_limits<double>::quiet_NaN();
    double hl = std::numeric_limits<double>::quiet_NaN();
    bool diverged = false;
    double phi = 0.0;
};

struct SweepMetadata {
    std::string family;
    ObservableSpec observable;
    MziConfig config;
    double phi_n = 0.0;
    double step = 0.0;
};

/// Figure data: rows sorted by strictly increasing abscissa.
struct SweepTable {
    std::vector<SweepRow> rows;
    SweepMetadata metadata;
};

/// Worker count for sweeps, from FOCKMZI_WORKERS (default: hardware threads).
inline unsigned sweep_workers() {
    if (const char *env = std::getenv("FOCKMZI_WORKERS")) {
        const long value = std::strtol(env, nullptr, 10);
        if (value >= 1) {
            return static_cast<unsigned>(value);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = fn(i) for i < count, spread across workers; order is preserved
/// and the first exception raised by any worker is rethrown.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, const F &fn, unsigned workers = sweep_workers()) {
    std::vector<T> out(count);
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

/// `steps` evenly spaced points from phi_min to phi_max inclusive.
inline std::vector<double> phi_grid(double phi_min, double phi_max, int steps) {
    if (steps < 2) {
        throw Error(ErrorCode::InvalidArgument, "a phase grid needs at least 2 steps");
    }
    if (!(phi_max > phi_min)) {
        throw Error(ErrorCode::InvalidArgument, "phi_max must exceed phi_min");
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        grid[i] = phi_min + (phi_max - phi_min) * i / (steps - 1);
    }
    return grid;
}

inline void require_increasing(const std::vector<double> &grid) {
    if (grid.empty()) {
        throw Error(ErrorCode::InvalidArgument, "phase grid is empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "phase grid must be strictly increasing");
        }
    }
}

inline SweepTable sweep_signal(const Preparation &prepare, const ObservableSpec &observable,
                               const std::vector<double> &phi_grid_values, SweepMetadata metadata = {}) {
    require_increasing(phi_grid_values);
    metadata.observable = observable;
    SweepTable table;
    table.metadata = std::move(metadata);
    table.rows = parallel_map<SweepRow>(phi_grid_values.size(), [&](std::size_t i) {
        const double phi = phi_grid_values[i];
        const auto result = measure(prepare(phi), observable);
        SweepRow row;
        row.abscissa = phi;
        row.phi = phi;
        row.mean = result.mean;
        row.variance = result.variance;
        return row;
    });
    return table;
}

inline SweepTable sweep_signal(const StateFamily &family, const ObservableSpec &observable,
                               const std::vector<double> &phi_grid_values, const MziConfig &config) {
    SweepMetadata metadata;
    metadata.family = std::string(to_string(family.kind));
    metadata.config = config;
    metadata.phi_n = family.phi_n;
    return sweep_signal(make_preparation(family, config), observable, phi_grid_values, std::move(metadata));
}

/// Parity-based phase uncertainty of twin-Fock inputs |N,N> against the
/// total photon number 2N, one row per N (abscissa 2N).
inline SweepTable sweep_uncertainty(double phi, std::vector<int> n_range,
                                    MziConfig config = {BeamSplitterConvention::RealAsymmetric, kTwinFockBs2},
                                    std::optional<double> step = std::nullopt) {
    if (!(phi >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "phi must be nonnegative");
    }
    if (n_range.empty()) {
        throw Error(ErrorCode::InvalidArgument, "photon-number range is empty");
    }
    std::sort(n_range.begin(), n_range.end());
    for (std::size_t i = 0; i < n_range.size(); ++i) {
        if (n_range[i] < 1) {
            throw Error(ErrorCode::InvalidArgument, "twin-Fock photon numbers must be >= 1");
        }
        if (i > 0 && n_range[i] == n_range[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "duplicate photon number " + std::to_string(n_range[i]));
        }
    }
    const ObservableSpec parity{ObservableTag::ParityB, 0};
    SweepTable table;
    table.metadata.family = "twin-fock";
    table.metadata.observable = parity;
    table.metadata.config = config;
    table.metadata.step = step.value_or(0.0);
    table.rows = parallel_map<SweepRow>(n_range.size(), [&](std::size_t i) {
        StateFamily family;
        family.kind = FamilyKind::TwinFock;
        family.n = n_range[i];
        const auto report = phase_uncertainty(make_preparation(family, config), parity, phi, step);
        SweepRow row;
        row.abscissa = 2.0 * n_range[i];
        row.phi = phi;
        row.mean = report.mean;
        row.variance = report.variance;
        row.delta_phi = report.delta_phi;
        row.sql = sql_baseline(2.0 * n_range[i]);
        row.hl = hl_baseline(2.0 * n_range[i]);
        row.diverged = report.diverged;
        return row;
    });
    return table;
}

}  // namespace fockmzi
