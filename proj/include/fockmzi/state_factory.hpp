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
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "fockmzi/error.hpp"
#include "fockmzi/fock_space.hpp"

namespace fockmzi {

inline constexpr double kDefaultTailEpsilon = 1e-12;
inline constexpr double kDefaultMaxMeanPhotons = 100.0;

struct CoherentSpec {
    Amplitude alpha{};
    double tail_epsilon = kDefaultTailEpsilon;
    double max_mean_photons = kDefaultMaxMeanPhotons;
};

struct NoonSpec {
    int n_photons = 1;
    double phi_n = 0.0;
};

/// Relative NOON phase used when none is given: 0 for even N, pi/2 for odd N.
inline double default_noon_phase(int n_photons) {
    return n_photons % 2 == 0 ? 0.0 : std::numbers::pi / 2.0;
}

/// Truncated single-mode coherent-state amplitudes c_0..c_{N_max}.
struct CoherentSeries {
    std::vector<Amplitude> amplitudes;  ///< renormalized over the kept range
    double truncation_loss = 0.0;       ///< discarded Poisson tail mass
    int cutoff() const { return static_cast<int>(amplitudes.size()) - 1; }
};

/// Smallest N_max whose Poisson tail sum_{n > N_max} P(n) is below
/// `tail_epsilon`, paired with that tail mass.
inline std::pair<int, double> poisson_cutoff(double mean, double tail_epsilon) {
    if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "tail_epsilon must lie in (0, 1)");
    }
    if (mean == 0.0) {
        return {0, 0.0};
    }
    // Terms beyond this bound are far below any usable epsilon.
    const int bound = static_cast<int>(std::ceil(mean + 40.0 * std::sqrt(mean) + 60.0));
    std::vector<double> prob(static_cast<std::size_t>(bound) + 1);
    const double log_mean = std::log(mean);
    for (int n = 0; n <= bound; ++n) {
        prob[n] = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    }
    // tail[n] = sum_{m > n} P(m), accumulated from the small end.
    std::vector<double> tail(prob.size(), 0.0);
    for (int n = bound - 1; n >= 0; --n) {
        tail[n] = tail[n + 1] + prob[n + 1];
    }
    for (int n = 0; n <= bound; ++n) {
        if (tail[n] < tail_epsilon) {
            return {n, tail[n]};
        }
    }
    return {bound, 0.0};
}

inline CoherentSeries coherent_series(const CoherentSpec &spec) {
    const double mean = std::norm(spec.alpha);
    if (mean > spec.max_mean_photons) {
        throw Error(ErrorCode::AlphaTooLarge,
                    "|alpha|^2 = " + std::to_string(mean) + " exceeds the configured maximum " +
                        std::to_string(spec.max_mean_photons));
    }
    const auto [cutoff, tail] = poisson_cutoff(mean, spec.tail_epsilon);
    CoherentSeries series;
    series.amplitudes.resize(static_cast<std::size_t>(cutoff) + 1);
    series.amplitudes[0] = Amplitude{std::exp(-mean / 2.0), 0.0};
    for (int n = 1; n <= cutoff; ++n) {
        series.amplitudes[n] = series.amplitudes[n - 1] * spec.alpha / std::sqrt(static_cast<double>(n));
    }
    double kept = 0.0;
    for (const auto &c : series.amplitudes) {
        kept += std::norm(c);
    }
    const double scale = 1.0 / std::sqrt(kept);
    for (auto &c : series.amplitudes) {
        c *= scale;
    }
    series.truncation_loss = tail;
    return series;
}

/// |alpha>_a |0>_b, truncated by the Poisson tail rule and renormalized.
inline TwoModeState coherent_vacuum(const CoherentSpec &spec) {
    const auto series = coherent_series(spec);
    TwoModeState::AmplitudeMap amps;
    for (int n = 0; n <= series.cutoff(); ++n) {
        amps.emplace(FockIndex{n, 0}, series.amplitudes[n]);
    }
    return TwoModeState(std::move(amps), series.cutoff(), series.truncation_loss);
}

/// |alpha>_a |beta>_b as a product of two independently truncated series.
inline TwoModeState coherent_pair(const CoherentSpec &a, const CoherentSpec &b) {
    const auto sa = coherent_series(a);
    const auto sb = coherent_series(b);
    TwoModeState::AmplitudeMap amps;
    for (int i = 0; i <= sa.cutoff(); ++i) {
        for (int j = 0; j <= sb.cutoff(); ++j) {
            amps.emplace(FockIndex{i, j}, sa.amplitudes[i] * sb.amplitudes[j]);
        }
    }
    const double loss = 1.0 - (1.0 - sa.truncation_loss) * (1.0 - sb.truncation_loss);
    return TwoModeState(std::move(amps), sa.cutoff() + sb.cutoff(), loss);
}

inline TwoModeState number_state(int n_a, int n_b) {
    if (n_a < 0 || n_b < 0) {
        throw Error(ErrorCode::NegativeCount, "photon numbers must be nonnegative");
    }
    return TwoModeState({{FockIndex{n_a, n_b}, Amplitude{1.0, 0.0}}}, n_a + n_b);
}

inline TwoModeState twin_fock(int n) { return number_state(n, n); }

/// (|N,0> + e^{i phi_N} |0,N>)/sqrt2.
inline TwoModeState noon(const NoonSpec &spec) {
    if (spec.n_photons < 1) {
        throw Error(ErrorCode::InvalidArgument, "NOON photon number must be >= 1");
    }
    const double r = std::numbers::sqrt2 / 2.0;
    const int n = spec.n_photons;
    return TwoModeState({{FockIndex{n, 0}, Amplitude{r, 0.0}}, {FockIndex{0, n}, std::polar(r, spec.phi_n)}}, n);
}

/// A_k^N = (-1)^{N-k} 2^{-N} sqrt(C(2k,k) C(2N-2k,N-k)) for k = 0..N.
///
/// Uses C(2k,k)/4^k = prod_{j<=k} (2j-1)/(2j), so nothing overflows.
inline std::vector<double> arcsine_coefficients(int n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "arcsine order must be >= 1");
    }
    std::vector<double> central(static_cast<std::size_t>(n) + 1);
    central[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        central[k] = central[k - 1] * (2.0 * k - 1.0) / (2.0 * k);
    }
    std::vector<double> coeffs(central.size());
    for (int k = 0; k <= n; ++k) {
        const double magnitude = std::sqrt(central[k] * central[n - k]);
        coeffs[k] = (n - k) % 2 == 0 ? magnitude : -magnitude;
    }
    return coeffs;
}

/// sum_k A_k^N |2k, 2N-2k>: the twin-Fock state |N,N> after a
/// RealAsymmetric beam splitter, with the global phase fixed by the signs of A_k^N.
inline TwoModeState arcsine_state(int n) {
    const auto coeffs = arcsine_coefficients(n);
    TwoModeState::AmplitudeMap amps;
    for (int k = 0; k <= n; ++k) {
        amps.emplace(FockIndex{2 * k, 2 * n - 2 * k}, Amplitude{coeffs[k], 0.0});
    }
    return TwoModeState(std::move(amps), 2 * n);
}

/// |alpha>_a|0>_b + e^{i rel_phase} |0>_a|alpha e^{i theta}>_b, not normalized.
/// Each branch is a renormalized truncated coherent state; amplitudes that
/// cancel below the prune threshold are dropped.
inline TwoModeState entangled_coherent_unnormalized(Amplitude alpha, double rel_phase, double theta,
                                                    double tail_epsilon = kDefaultTailEpsilon) {
    const auto series = coherent_series(CoherentSpec{alpha, tail_epsilon});
    const auto rotated = coherent_series(CoherentSpec{alpha * std::polar(1.0, theta), tail_epsilon});
    const Amplitude weight = std::polar(1.0, rel_phase);
    TwoModeState::AmplitudeMap amps;
    for (int n = 0; n <= series.cutoff(); ++n) {
        amps[FockIndex{n, 0}] += series.amplitudes[n];
    }
    for (int n = 0; n <= rotated.cutoff(); ++n) {
        amps[FockIndex{0, n}] += weight * rotated.amplitudes[n];
    }
    std::erase_if(amps, [](const auto &kv) { return std::abs(kv.second) < kDefaultPruneThreshold; });
    return TwoModeState(std::move(amps), series.cutoff(), series.truncation_loss);
}

inline TwoModeState entangled_coherent(Amplitude alpha, double rel_phase, double theta,
                                       double tail_epsilon = kDefaultTailEpsilon) {
    return normalize(entangled_coherent_unnormalized(alpha, rel_phase, theta, tail_epsilon));
}

}  // namespace fockmzi
