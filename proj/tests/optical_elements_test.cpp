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

#include "fockmzi/optical_elements.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>

#include "gtest/gtest.h"

#include "fockmzi/detection.hpp"
#include "fockmzi/state_factory.hpp"
#include "test_util.hpp"

using namespace fockmzi;
using BS = BeamSplitterConvention;

namespace {

const Amplitude I{0.0, 1.0};
const double R = std::numbers::sqrt2 / 2.0;

// Oracle: expand [x_a a^dag + y_a b^dag]^N [x_b a^dag + y_b b^dag]^M |0,0> / sqrt(N! M!)
// as a polynomial in (a^dag, b^dag), then use a^dag^p b^dag^q |0,0> = sqrt(p! q!) |p,q>.
TwoModeState binomial_image(int n, int m, BS conv) {
    using Poly = std::map<std::pair<int, int>, std::complex<long double>>;
    std::complex<long double> xa, ya, xb, yb;
    const long double r = std::sqrt(0.5L);
    if (conv == BS::IReflect) {
        // a^dag -> (a^dag + i b^dag)/sqrt2, b^dag -> (b^dag + i a^dag)/sqrt2
        xa = {r, 0}, ya = {0, r}, xb = {0, r}, yb = {r, 0};
    } else {
        // a^dag -> (a^dag - b^dag)/sqrt2, b^dag -> (a^dag + b^dag)/sqrt2
        xa = {r, 0}, ya = {-r, 0}, xb = {r, 0}, yb = {r, 0};
    }
    Poly poly{{{0, 0}, 1.0L}};
    auto multiply = [&](std::complex<long double> x, std::complex<long double> y) {
        Poly next;
        for (const auto &[pq, c] : poly) {
            next[{pq.first + 1, pq.second}] += c * x;
            next[{pq.first, pq.second + 1}] += c * y;
        }
        poly = std::move(next);
    };
    for (int i = 0; i < n; ++i) multiply(xa, ya);
    for (int i = 0; i < m; ++i) multiply(xb, yb);
    const long double norm = std::sqrt(std::tgamma(n + 1.0L) * std::tgamma(m + 1.0L));
    TwoModeState::AmplitudeMap amps;
    for (const auto &[pq, c] : poly) {
        const long double weight = std::sqrt(std::tgamma(pq.first + 1.0L) * std::tgamma(pq.second + 1.0L)) / norm;
        const auto value = c * weight;
        if (std::abs(value) > 1e-18L) {
            amps.emplace(FockIndex{pq.first, pq.second},
                         Amplitude{static_cast<double>(value.real()), static_cast<double>(value.imag())});
        }
    }
    return TwoModeState(std::move(amps), n + m);
}

TwoModeState superpose(std::initializer_list<std::pair<FockIndex, Amplitude>> terms, int cutoff) {
    TwoModeState::AmplitudeMap amps;
    for (const auto &[k, v] : terms) amps[k] += v;
    return TwoModeState(std::move(amps), cutoff);
}

}  // namespace

TEST(beam_splitter, basis_images_match_closed_forms) {
    EXPECT_LT(test_util::max_amplitude_error(beam_splitter(number_state(1, 0), BS::IReflect),
                                           superpose({{{1, 0}, R}, {{0, 1}, I * R}}, 1)),
              1e-12);
    EXPECT_LT(test_util::max_amplitude_error(beam_splitter(number_state(1, 1), BS::IReflect),
                                           superpose({{{2, 0}, I * R}, {{0, 2}, I * R}}, 2)),
              1e-12);
    EXPECT_LT(test_util::max_amplitude_error(beam_splitter(number_state(1, 1), BS::RealAsymmetric),
                                           superpose({{{2, 0}, R}, {{0, 2}, -R}}, 2)),
              1e-12);
    // Binomial expansion of (a^dag + i b^dag)^2 / (2 sqrt(2!)).
    EXPECT_LT(test_util::max_amplitude_error(beam_splitter(number_state(2, 0), BS::IReflect),
                                           superpose({{{2, 0}, 0.5}, {{1, 1}, I * R}, {{0, 2}, -0.5}}, 2)),
              1e-12);
}

TEST(beam_splitter, hong_ou_mandel_has_no_coincidences) {
    for (auto conv : {BS::IReflect, BS::RealAsymmetric}) {
        EXPECT_LT(std::abs(beam_splitter(number_state(1, 1), conv).amplitude(1, 1)), 1e-15);
    }
}

TEST(beam_splitter, recurrence_matches_binomial_expansion) {
    for (auto conv : {BS::IReflect, BS::RealAsymmetric}) {
        for (int n = 0; n <= 12; ++n) {
            for (int k = 0; k <= n; ++k) {
                const auto image = beam_splitter(number_state(k, n - k), conv);
                EXPECT_LT(test_util::max_amplitude_error(image, binomial_image(k, n - k, conv)), 1e-13)
                    << "conv " << to_string(conv) << " input (" << k << ", " << n - k << ")";
            }
        }
    }
}

TEST(beam_splitter, sector_matrices_are_unitary) {
    for (auto conv : {BS::IReflect, BS::RealAsymmetric}) {
        for (int n = 0; n <= 12; ++n) {
            const auto u = sector_matrix(conv, n);
            ASSERT_EQ(u->dim(), n + 1);
            double err = 0.0;
            for (int i = 0; i <= n; ++i) {
                for (int j = 0; j <= n; ++j) {
                    Amplitude dot{};
                    for (int k = 0; k <= n; ++k) dot += std::conj((*u)(k, i)) * (*u)(k, j);
                    err = std::max(err, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
            }
            EXPECT_LT(err, 1e-12) << "sector " << n;
        }
    }
}

TEST(beam_splitter, large_sectors_stay_unitary) {
    for (auto conv : {BS::IReflect, BS::RealAsymmetric}) {
        for (int n : {120, 200}) {
            const auto u = sector_matrix(conv, n);
            double err = 0.0;
            for (int i = 0; i <= n; ++i) {
                for (int j = i; j <= n; ++j) {
                    Amplitude dot{};
                    for (int k = 0; k <= n; ++k) dot += std::conj((*u)(k, i)) * (*u)(k, j);
                    err = std::max(err, std::abs(dot - (i == j ? 1.0 : 0.0)));
                }
            }
            EXPECT_LT(err, 1e-12) << "sector " << n;
        }
    }
}

TEST(beam_splitter, vacuum_is_invariant) {
    for (auto conv : {BS::IReflect, BS::RealAsymmetric}) {
        const auto out = beam_splitter(number_state(0, 0), conv);
        EXPECT_EQ(out.size(), 1u);
        EXPECT_NEAR(std::abs(out.amplitude(0, 0) - 1.0), 0.0, 1e-15);
    }
}

TEST(beam_splitter, coherent_pair_maps_to_coherent_pair) {
    const Amplitude alpha{1.5, -0.4};
    const Amplitude beta{0.3, 1.1};
    const double eps = 1e-24;
    const auto out = beam_splitter(coherent_pair(CoherentSpec{alpha, eps}, CoherentSpec{beta, eps}), BS::IReflect);
    const auto expected =
        coherent_pair(CoherentSpec{(alpha + I * beta) * R, eps}, CoherentSpec{(beta + I * alpha) * R, eps});
    EXPECT_LT(test_util::max_amplitude_error(out, expected), 1e-10);
}

TEST(beam_splitter, rejects_unnormalized_input) {
    TwoModeState raw({{FockIndex{1, 0}, Amplitude{2.0, 0.0}}}, 1);
    EXPECT_THROW(beam_splitter(raw, BS::IReflect), Error);
}

TEST(phase_shift, identity_at_zero) {
    std::mt19937_64 rng(11);
    const auto state = test_util::random_state(rng, 6);
    EXPECT_EQ(test_util::max_amplitude_error(phase_shift(state, 0.0), state), 0.0);
}

TEST(phase_shift, single_photon_arm) {
    const double phi = 0.83;
    const auto out = phase_shift(beam_splitter(number_state(1, 0), BS::IReflect), phi, Mode::b);
    const auto expected = superpose({{{1, 0}, R}, {{0, 1}, I * std::polar(1.0, phi) * R}}, 1);
    EXPECT_LT(test_util::max_amplitude_error(out, expected), 1e-15);
}

TEST(phase_shift, noon_relative_phase_scales_with_n) {
    const double phi = 0.41;
    for (int n : {1, 2, 5}) {
        const double phi_n = 0.2 * n;
        const auto out = phase_shift(noon(NoonSpec{n, phi_n}), phi);
        const Amplitude rel = out.amplitude(0, n) / out.amplitude(n, 0);
        EXPECT_NEAR(std::abs(rel - std::polar(1.0, n * phi + phi_n)), 0.0, 1e-14);
    }
}

TEST(phase_shift, commutes_with_diagonal_expectations) {
    std::mt19937_64 rng(5);
    const auto state = test_util::random_state(rng, 7);
    auto weight = [](int a, int b) { return 0.5 * a * a - 3.0 * b + (b % 2 ? 1.0 : -1.0); };
    const double before = expectation_diagonal(state, weight);
    for (double phi : {0.1, 1.0, -2.5}) {
        EXPECT_NEAR(expectation_diagonal(phase_shift(state, phi, Mode::a), weight), before, 1e-12);
        EXPECT_NEAR(expectation_diagonal(phase_shift(state, phi, Mode::b), weight), before, 1e-12);
    }
}

TEST(mzi, single_photon_output) {
    for (double phi : {0.0, 0.3, 1.7, 3.0}) {
        const Amplitude e = std::polar(1.0, phi);
        const auto expected = superpose({{{1, 0}, 0.5 * (1.0 - e)}, {{0, 1}, 0.5 * I * (1.0 + e)}}, 1);
        EXPECT_LT(test_util::max_amplitude_error(mzi(number_state(1, 0), phi).pruned(0.0), expected), 1e-15);
    }
}

TEST(mzi, zero_phase_sends_photon_to_b) {
    const auto out = mzi(number_state(1, 0), 0.0);
    EXPECT_LT(std::abs(out.amplitude(1, 0)), 1e-15);
    EXPECT_NEAR(std::abs(out.amplitude(0, 1)), 1.0, 1e-15);
}

TEST(mzi, coherent_input_gives_coherent_output) {
    const Amplitude alpha{2.0, 0.0};
    const double eps = 1e-24;
    for (double phi : {0.4, 2.2}) {
        const Amplitude e = std::polar(1.0, phi);
        const auto out = mzi(coherent_vacuum(CoherentSpec{alpha, eps}), phi);
        const auto expected =
            coherent_pair(CoherentSpec{alpha * 0.5 * (1.0 - e), eps}, CoherentSpec{I * alpha * 0.5 * (1.0 + e), eps});
        EXPECT_LT(test_util::max_amplitude_error(out, expected), 1e-10) << "phi " << phi;
    }
}

TEST(mzi, periodic_in_two_pi) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const auto state = test_util::random_state(rng, 8);
        const double phi = 0.37 * trial;
        for (auto conv : {BS::IReflect, BS::RealAsymmetric}) {
            const MziConfig config{conv, conv};
            EXPECT_LT(test_util::max_amplitude_error(mzi(state, phi, config),
                                                   mzi(state, phi + 2.0 * std::numbers::pi, config)),
                      1e-12);
        }
    }
}

TEST(magic_interferometer, single_photon_noon) {
    const double phi_1 = std::numbers::pi / 2.0;
    for (double phi : {0.0, 0.6, 2.0}) {
        const Amplitude e = std::polar(1.0, phi + phi_1);
        const auto out = magic_interferometer_output(noon(NoonSpec{1, phi_1}), phi);
        const auto expected = superpose({{{1, 0}, 0.5 * (1.0 + I * e)}, {{0, 1}, 0.5 * (I + e)}}, 1);
        EXPECT_LT(test_util::max_amplitude_error(out.pruned(0.0), expected), 1e-15);
    }
}

TEST(magic_interferometer, two_photon_noon) {
    for (double phi_2 : {0.0, 1.3}) {
        for (double phi : {0.0, 0.5, 2.9}) {
            const Amplitude e = std::polar(1.0, 2.0 * phi + phi_2);
            const auto out = magic_interferometer_output(noon(NoonSpec{2, phi_2}), phi);
            EXPECT_NEAR(std::abs(out.amplitude(2, 0) - std::numbers::sqrt2 * (1.0 - e) / 4.0), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(out.amplitude(1, 1) - 2.0 * I * (1.0 + e) / 4.0), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(out.amplitude(0, 2) - std::numbers::sqrt2 * (e - 1.0) / 4.0), 0.0, 1e-12);
        }
    }
    const auto dark = magic_interferometer_output(noon(NoonSpec{2, 0.0}), 0.0);
    EXPECT_EQ(dark.amplitude(2, 0), Amplitude{});
    EXPECT_EQ(dark.amplitude(0, 2), Amplitude{});
    EXPECT_NEAR(std::abs(dark.amplitude(1, 1)), 1.0, 1e-15);
}

TEST(magic_interferometer, rejects_non_noon_input) {
    for (const auto &bad : {number_state(1, 1), number_state(2, 0), arcsine_state(2)}) {
        try {
            magic_interferometer_output(bad, 0.1);
            FAIL() << "expected NotNoonForm";
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::NotNoonForm);
        }
    }
}
