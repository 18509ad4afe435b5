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

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iterator>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fockmzi/error.hpp"
#include "fockmzi/fock_space.hpp"

namespace fockmzi {

/// Which lossless 50:50 transformation a beam splitter applies.
///
/// IReflect:        a' = (a + i b)/sqrt2,  b' = (b + i a)/sqrt2
/// RealAsymmetric:  a' = (a + b)/sqrt2,    b' = (b - a)/sqrt2
enum class BeamSplitterConvention { IReflect, RealAsymmetric };

inline std::string_view to_string(BeamSplitterConvention conv) {
    return conv == BeamSplitterConvention::IReflect ? "i-reflect" : "real-asymmetric";
}

/// Mach-Zehnder layout: BS1, a phase shift on the b arm, BS2. Mirror phases
/// contribute only a global phase and are not modelled.
struct MziConfig {
    BeamSplitterConvention bs1 = BeamSplitterConvention::IReflect;
    BeamSplitterConvention bs2 = BeamSplitterConvention::IReflect;
};

namespace detail {

/// Images of the input creation operators in terms of the output ones:
/// a^dag -> row[0][0] a^dag + row[0][1] b^dag, b^dag -> row[1][0] a^dag + row[1][1] b^dag.
inline std::array<std::array<Amplitude, 2>, 2> creation_map(BeamSplitterConvention conv) {
    const double r = std::numbers::sqrt2 / 2.0;
    if (conv == BeamSplitterConvention::IReflect) {
        // Inverting a' = (a + i b)/sqrt2 gives a^dag -> (a'^dag + i b'^dag)/sqrt2.
        return {{{Amplitude{r, 0.0}, Amplitude{0.0, r}}, {Amplitude{0.0, r}, Amplitude{r, 0.0}}}};
    }
    // Inverting a' = (a + b)/sqrt2, b' = (b - a)/sqrt2 gives
    // a^dag -> (a'^dag - b'^dag)/sqrt2, b^dag -> (a'^dag + b'^dag)/sqrt2.
    return {{{Amplitude{r, 0.0}, Amplitude{-r, 0.0}}, {Amplitude{r, 0.0}, Amplitude{r, 0.0}}}};
}

}  // namespace detail

/// Beam-splitter action restricted to the sector of total photon number n.
///
/// Column j is the image of |j, n-j>; row i is the coefficient of |i, n-i>.
class SectorMatrix {
  public:
    SectorMatrix(int photons, std::vector<Amplitude> data)
        : photons_(photons), data_(std::move(data)) {}

    int photons() const { return photons_; }
    int dim() const { return photons_ + 1; }

    Amplitude operator()(int row, int col) const {
        return data_[static_cast<std::size_t>(col) * dim() + row];
    }

    std::span<const Amplitude> column(int col) const {
        return std::span<const Amplitude>(data_).subspan(static_cast<std::size_t>(col) * dim(), dim());
    }

  private:
    int photons_;
    std::vector<Amplitude> data_;
};

/// Builds sector n from sector n-1 by applying the transformed creation
/// operators to the previous images, one photon at a time.
inline SectorMatrix next_sector(BeamSplitterConvention conv, const SectorMatrix &prev) {
    const auto map = detail::creation_map(conv);
    const int n = prev.photons() + 1;
    const int dim = n + 1;
    std::vector<Amplitude> data(static_cast<std::size_t>(dim) * dim);

    auto raise = [&](std::span<const Amplitude> src, int which, double scale, std::span<Amplitude> dst) {
        const Amplitude ca = map[which][0] * scale;
        const Amplitude cb = map[which][1] * scale;
        // src indexes |i, n-1-i>, dst indexes |i, n-i>.
        for (int i = 0; i < n; ++i) {
            const Amplitude v = src[i];
            if (v == Amplitude{}) {
                continue;
            }
            dst[i + 1] += ca * std::sqrt(static_cast<double>(i + 1)) * v;
            dst[i] += cb * std::sqrt(static_cast<double>(n - i)) * v;
        }
    };

    std::span<Amplitude> all(data);
    for (int col = 0; col < dim; ++col) {
        auto dst = all.subspan(static_cast<std::size_t>(col) * dim, dim);
        // |col, n-col> = (sqrt(col) a+ |col-1, n-col> + sqrt(n-col) b+ |col, n-col-1>) / n.
        // Averaging both paths keeps the step a contraction, so rounding
        // errors do not grow with the photon number.
        if (col >= 1) {
            raise(prev.column(col - 1), 0, std::sqrt(static_cast<double>(col)) / n, dst);
        }
        if (col < n) {
            raise(prev.column(col), 1, std::sqrt(static_cast<double>(n - col)) / n, dst);
        }
    }
    return SectorMatrix(n, std::move(data));
}

/// Process-wide, grow-only cache of sector matrices. Lookups and growth are
/// serialized by a mutex; returned matrices are immutable and shared.
class SectorCache {
  public:
    static SectorCache &instance() {
        static SectorCache cache;
        return cache;
    }

    std::shared_ptr<const SectorMatrix> get(BeamSplitterConvention conv, int photons) {
        if (photons < 0) {
            throw Error(ErrorCode::NegativeCount, "sector photon number must be nonnegative");
        }
        std::lock_guard<std::mutex> lock(mutex_);
        auto &table = tables_[conv == BeamSplitterConvention::IReflect ? 0 : 1];
        if (table.empty()) {
            table.push_back(std::make_shared<const SectorMatrix>(0, std::vector<Amplitude>{Amplitude{1.0, 0.0}}));
        }
        while (static_cast<int>(table.size()) <= photons) {
            table.push_back(std::make_shared<const SectorMatrix>(next_sector(conv, *table.back())));
        }
        return table[photons];
    }

  private:
    SectorCache() = default;

    std::mutex mutex_;
    std::array<std::vector<std::shared_ptr<const SectorMatrix>>, 2> tables_;
};

inline std::shared_ptr<const SectorMatrix> sector_matrix(BeamSplitterConvention conv, int photons) {
    return SectorCache::instance().get(conv, photons);
}

/// Applies a 50:50 beam splitter. Each total-photon sector maps onto itself,
/// so the output cutoff only needs to cover the largest occupied sector.
inline TwoModeState beam_splitter(const TwoModeState &state, BeamSplitterConvention conv,
                                  double prune_threshold = kDefaultPruneThreshold) {
    require_normalized(state);
    const int max_sector = state.max_total_photons();
    std::vector<std::vector<Amplitude>> sectors(static_cast<std::size_t>(max_sector) + 1);
    for (const auto &[key, amp] : state.amplitudes()) {
        auto &vec = sectors[key.total()];
        if (vec.empty()) {
            vec.assign(static_cast<std::size_t>(key.total()) + 1, Amplitude{});
        }
        vec[key.n_a] = amp;
    }

    TwoModeState::AmplitudeMap out;
    for (int n = 0; n <= max_sector; ++n) {
        const auto &in = sectors[n];
        if (in.empty()) {
            continue;
        }
        const auto matrix = sector_matrix(conv, n);
        std::vector<Amplitude> result(in.size());
        for (int col = 0; col <= n; ++col) {
            if (in[col] == Amplitude{}) {
                continue;
            }
            const auto column = matrix->column(col);
            for (int row = 0; row <= n; ++row) {
                result[row] += column[row] * in[col];
            }
        }
        for (int row = 0; row <= n; ++row) {
            if (std::abs(result[row]) >= prune_threshold) {
                out.emplace(FockIndex{row, n - row}, result[row]);
            }
        }
    }
    return TwoModeState(std::move(out), std::max(state.cutoff(), max_sector), state.truncation_loss());
}

/// exp(i phi n_mode): multiplies the amplitude at (n_a, n_b) by e^{i n_mode phi}.
inline TwoModeState phase_shift(const TwoModeState &state, double phi, Mode mode = Mode::b) {
    require_normalized(state);
    TwoModeState::AmplitudeMap out;
    for (const auto &[key, amp] : state.amplitudes()) {
        const int n = mode == Mode::a ? key.n_a : key.n_b;
        out.emplace_hint(out.end(), key, amp * std::polar(1.0, n * phi));
    }
    return TwoModeState(std::move(out), state.cutoff(), state.truncation_loss());
}

inline TwoModeState mzi(const TwoModeState &input, double phi, const MziConfig &config = {}) {
    return beam_splitter(phase_shift(beam_splitter(input, config.bs1), phi, Mode::b), config.bs2);
}

/// N when the state is supported exactly on {(N,0), (0,N)} with both
/// amplitudes nonzero; throws NotNoonForm otherwise.
inline int noon_order(const TwoModeState &state) {
    if (state.size() != 2) {
        throw Error(ErrorCode::NotNoonForm, "expected exactly two nonzero amplitudes");
    }
    const auto first = state.amplitudes().begin()->first;
    const auto second = std::next(state.amplitudes().begin())->first;
    // Lexicographic order puts (0, N) before (N, 0).
    const int n = second.n_a;
    if (n < 1 || first != FockIndex{0, n} || second != FockIndex{n, 0}) {
        throw Error(ErrorCode::NotNoonForm, "support must be {(N,0), (0,N)} with N >= 1");
    }
    return n;
}

/// NOON state through the phase shift and a single output beam splitter.
inline TwoModeState magic_interferometer_output(const TwoModeState &noon, double phi) {
    noon_order(noon);
    return beam_splitter(phase_shift(noon, phi, Mode::b), BeamSplitterConvention::IReflect);
}

}  // namespace fockmzi
