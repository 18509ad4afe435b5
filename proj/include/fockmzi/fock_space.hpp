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
#include <compare>
#include <complex>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "fockmzi/error.hpp"

namespace fockmzi {

using Amplitude = std::complex<double>;

enum class Mode { a, b };

/// Photon-number pair labelling a two-mode basis state |n_a, n_b>.
struct FockIndex {
    int n_a = 0;
    int n_b = 0;

    int total() const { return n_a + n_b; }

    friend auto operator<=>(const FockIndex &, const FockIndex &) = default;
};

inline constexpr double kDefaultPruneThreshold = 1e-15;
inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kZeroNormFloor = 1e-300;

/// Pure state on two bosonic modes, truncated at `cutoff` photons per mode.
///
/// Amplitudes are stored sparsely; a missing key means an exactly zero
/// amplitude. Instances are immutable once built.
class TwoModeState {
  public:
    using AmplitudeMap = std::map<FockIndex, Amplitude>;

    TwoModeState() = default;

    TwoModeState(AmplitudeMap amplitudes, int cutoff, double truncation_loss = 0.0)
        : amplitudes_(std::move(amplitudes)), cutoff_(cutoff), truncation_loss_(truncation_loss) {
        if (cutoff_ < 0) {
            throw Error(ErrorCode::InvalidArgument, "cutoff must be nonnegative");
        }
        if (!(truncation_loss_ >= 0.0 && truncation_loss_ <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "truncation_loss must lie in [0, 1]");
        }
        for (const auto &[key, amp] : amplitudes_) {
            if (key.n_a < 0 || key.n_b < 0) {
                throw Error(ErrorCode::NegativeCount, "photon numbers must be nonnegative");
            }
            if (key.n_a > cutoff_ || key.n_b > cutoff_) {
                throw Error(ErrorCode::CutoffExceeded,
                            "basis state (" + std::to_string(key.n_a) + ", " +
                                std::to_string(key.n_b) + ") exceeds cutoff " + std::to_string(cutoff_));
            }
        }
    }

    const AmplitudeMap &amplitudes() const { return amplitudes_; }
    int cutoff() const { return cutoff_; }
    double truncation_loss() const { return truncation_loss_; }
    std::size_t size() const { return amplitudes_.size(); }
    bool empty() const { return amplitudes_.empty(); }

    Amplitude amplitude(int n_a, int n_b) const {
        auto it = amplitudes_.find(FockIndex{n_a, n_b});
        return it == amplitudes_.end() ? Amplitude{} : it->second;
    }

    double norm_squared() const {
        double sum = 0.0;
        for (const auto &[key, amp] : amplitudes_) {
            sum += std::norm(amp);
        }
        return sum;
    }

    /// Largest n_a + n_b carried by a stored amplitude (0 for the empty state).
    int max_total_photons() const {
        int best = 0;
        for (const auto &[key, amp] : amplitudes_) {
            best = std::max(best, key.total());
        }
        return best;
    }

    /// Copy with every amplitude of magnitude below `threshold` removed.
    TwoModeState pruned(double threshold = kDefaultPruneThreshold) const {
        AmplitudeMap kept;
        for (const auto &[key, amp] : amplitudes_) {
            if (std::abs(amp) >= threshold) {
                kept.emplace_hint(kept.end(), key, amp);
            }
        }
        return TwoModeState(std::move(kept), cutoff_, truncation_loss_);
    }

  private:
    AmplitudeMap amplitudes_;
    int cutoff_ = 0;
    double truncation_loss_ = 0.0;
};

/// Any callable giving a real weight for a photon-number pair. Used for
/// observables diagonal in the number basis.
template <typename F>
concept DiagonalWeight = std::regular_invocable<const F &, int, int> &&
                         std::convertible_to<std::invoke_result_t<const F &, int, int>, double>;

/// <lhs|rhs>, reading missing keys as zero.
inline Amplitude inner_product(const TwoModeState &lhs, const TwoModeState &rhs) {
    const auto &small = lhs.size() <= rhs.size() ? lhs.amplitudes() : rhs.amplitudes();
    const auto &large = lhs.size() <= rhs.size() ? rhs.amplitudes() : lhs.amplitudes();
    const bool lhs_is_small = lhs.size() <= rhs.size();
    Amplitude sum{};
    for (const auto &[key, amp] : small) {
        auto it = large.find(key);
        if (it == large.end()) {
            continue;
        }
        sum += lhs_is_small ? std::conj(amp) * it->second : std::conj(it->second) * amp;
    }
    return sum;
}

inline TwoModeState normalize(const TwoModeState &state) {
    const double norm2 = state.norm_squared();
    if (!(norm2 >= kZeroNormFloor)) {
        throw Error(ErrorCode::ZeroNorm, "cannot normalize a state with zero norm");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    TwoModeState::AmplitudeMap out;
    for (const auto &[key, amp] : state.amplitudes()) {
        out.emplace_hint(out.end(), key, amp * scale);
    }
    return TwoModeState(std::move(out), state.cutoff(), state.truncation_loss());
}

inline void require_normalized(const TwoModeState &state, double tolerance = kNormTolerance) {
    const double norm2 = state.norm_squared();
    if (!(std::abs(norm2 - 1.0) <= tolerance)) {
        throw Error(ErrorCode::NotNormalized,
                    "state norm^2 = " + std::to_string(norm2) + " deviates from 1");
    }
}

/// sum_k w(n_a, n_b) |c_k|^2 on a normalized state.
template <DiagonalWeight W>
double expectation_diagonal(const TwoModeState &state, const W &weight) {
    require_normalized(state);
    double sum = 0.0;
    for (const auto &[key, amp] : state.amplitudes()) {
        sum += static_cast<double>(weight(key.n_a, key.n_b)) * std::norm(amp);
    }
    return sum;
}

inline double mean_photon(const TwoModeState &state, Mode mode) {
    if (mode == Mode::a) {
        return expectation_diagonal(state, [](int n_a, int) { return n_a; });
    }
    return expectation_diagonal(state, [](int, int n_b) { return n_b; });
}

inline double mean_total_photons(const TwoModeState &state) {
    return expectation_diagonal(state, [](int n_a, int n_b) { return n_a + n_b; });
}

}  // namespace fockmzi
