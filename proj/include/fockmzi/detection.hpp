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
#include <limits>
#include <map>
#include <string>
#include <string_view>

#include "fockmzi/error.hpp"
#include "fockmzi/fock_space.hpp"

namespace fockmzi {

enum class ObservableTag { J, J2, ParityB, SigmaN };

inline std::string_view to_string(ObservableTag tag) {
    switch (tag) {
        case ObservableTag::J: return "j";
        case ObservableTag::J2: return "j2";
        case ObservableTag::ParityB: return "parity_b";
        case ObservableTag::SigmaN: return "sigma_n";
    }
    return "?";
}

inline ObservableTag parse_observable(std::string_view name) {
    if (name == "j") return ObservableTag::J;
    if (name == "j2") return ObservableTag::J2;
    if (name == "parity_b") return ObservableTag::ParityB;
    if (name == "sigma_n") return ObservableTag::SigmaN;
    throw Error(ErrorCode::InvalidArgument, "unknown observable '" + std::string(name) + "'");
}

/// An observable plus its parameter (the photon number N, for SigmaN only).
struct ObservableSpec {
    ObservableTag tag = ObservableTag::J;
    int n = 0;
};

struct ObservableResult {
    double mean = 0.0;
    double variance = 0.0;
    ObservableTag tag = ObservableTag::J;
};

struct JointDistribution {
    std::map<FockIndex, double> probabilities;

    double total() const {
        double sum = 0.0;
        for (const auto &[key, p] : probabilities) {
            sum += p;
        }
        return sum;
    }

    double at(int n_a, int n_b) const {
        auto it = probabilities.find(FockIndex{n_a, n_b});
        return it == probabilities.end() ? 0.0 : it->second;
    }
};

namespace detail {

// Round-off can push a variance slightly below zero; anything more negative
// than this relative slack signals a real numerical problem.
inline double clamp_variance(double variance, double scale) {
    if (variance >= 0.0) {
        return variance;
    }
    if (variance >= -1e-12 * std::max(1.0, scale)) {
        return 0.0;
    }
    throw Error(ErrorCode::NumericalFailure, "negative variance " + std::to_string(variance));
}

// Mean and central second moment of a diagonal observable, two-pass.
template <typename F>
ObservableResult diagonal_moments(const TwoModeState &state, const F &value, ObservableTag tag) {
    require_normalized(state);
    double mean = 0.0;
    double second = 0.0;
    for (const auto &[key, amp] : state.amplitudes()) {
        const double v = value(key.n_a, key.n_b);
        mean += v * std::norm(amp);
        second += v * v * std::norm(amp);
    }
    double central = 0.0;
    for (const auto &[key, amp] : state.amplitudes()) {
        const double d = value(key.n_a, key.n_b) - mean;
        central += d * d * std::norm(amp);
    }
    return ObservableResult{mean, clamp_variance(central, second), tag};
}

}  // namespace detail

/// J = n_b - n_a (intensity difference at the output ports).
inline ObservableResult measure_j(const TwoModeState &state) {
    return detail::diagonal_moments(
        state, [](int n_a, int n_b) { return static_cast<double>(n_b - n_a); }, ObservableTag::J);
}

/// J^2; its variance is <J^4> - <J^2>^2.
inline ObservableResult measure_j_squared(const TwoModeState &state) {
    return detail::diagonal_moments(
        state,
        [](int n_a, int n_b) {
            const double j = n_b - n_a;
            return j * j;
        },
        ObservableTag::J2);
}

/// Photon-number parity (-1)^{n_b} of the b output. Since the parity squares
/// to the identity, the variance is (1 - mean)(1 + mean).
inline ObservableResult measure_parity_b(const TwoModeState &state) {
    require_normalized(state);
    double mean = 0.0;
    for (const auto &[key, amp] : state.amplitudes()) {
        mean += (key.n_b % 2 == 0 ? 1.0 : -1.0) * std::norm(amp);
    }
    mean = std::clamp(mean, -1.0, 1.0);
    return ObservableResult{mean, (1.0 - mean) * (1.0 + mean), ObservableTag::ParityB};
}

/// Sigma_N = |N,0><0,N| + |0,N><N,0|.
inline ObservableResult measure_sigma_n(const TwoModeState &state, int n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "sigma_n requires N >= 1");
    }
    require_normalized(state);
    const Amplitude c_n0 = state.amplitude(n, 0);
    const Amplitude c_0n = state.amplitude(0, n);
    const double mean = 2.0 * std::real(std::conj(c_n0) * c_0n);
    const double second = std::norm(c_n0) + std::norm(c_0n);
    return ObservableResult{mean, detail::clamp_variance(second - mean * mean, second), ObservableTag::SigmaN};
}

inline ObservableResult measure(const TwoModeState &state, const ObservableSpec &spec) {
    switch (spec.tag) {
        case ObservableTag::J: return measure_j(state);
        case ObservableTag::J2: return measure_j_squared(state);
        case ObservableTag::ParityB: return measure_parity_b(state);
        case ObservableTag::SigmaN: return measure_sigma_n(state, spec.n);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown observable");
}

inline JointDistribution joint_distribution(const TwoModeState &state) {
    require_normalized(state);
    JointDistribution dist;
    for (const auto &[key, amp] : state.amplitudes()) {
        dist.probabilities.emplace_hint(dist.probabilities.end(), key, std::norm(amp));
    }
    return dist;
}

inline constexpr double kZeroNoiseFloor = 1e-300;

inline bool is_zero_noise(const ObservableResult &result) { return result.variance <= kZeroNoiseFloor; }

/// |mean| / sqrt(variance). A deterministic signal (zero noise) yields +inf;
/// use is_zero_noise() to tell it apart from a merely large ratio.
inline double snr(const ObservableResult &result) {
    if (is_zero_noise(result)) {
        return std::numeric_limits<double>::infinity();
    }
    return std::abs(result.mean) / std::sqrt(result.variance);
}

}  // namespace fockmzi
