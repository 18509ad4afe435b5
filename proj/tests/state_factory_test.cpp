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

#include "fockmzi/state_factory.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "fockmzi/detection.hpp"
#include "fockmzi/optical_elements.hpp"
#include "test_util.hpp"

using namespace fockmzi;

TEST(coherent_vacuum, zero_amplitude_is_vacuum) {
    const auto s = coherent_vacuum(CoherentSpec{0.0});
    EXPECT_EQ(s.size(), 1u);
    EXPECT_EQ(s.amplitude(0, 0), Amplitude(1.0, 0.0));
    EXPECT_EQ(s.truncation_loss(), 0.0);
}

TEST(coherent_vacuum, mean_photon_number) {
    const auto s = coherent_vacuum(CoherentSpec{std::sqrt(10.0), 1e-12});
    EXPECT_NEAR(mean_photon(s, Mode::a), 10.0, 1e-9);
    EXPECT_LT(s.truncation_loss(), 1e-12);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-14);
}

TEST(coherent_vacuum, poisson_ratio) {
    // P(2)/P(0) = |alpha|^4 / 2! for alpha = 2.
    const auto s = coherent_vacuum(CoherentSpec{2.0});
    EXPECT_NEAR(std::norm(s.amplitude(2, 0)) / std::norm(s.amplitude(0, 0)), 8.0, 1e-12);
}

TEST(coherent_vacuum, cutoff_is_smallest_meeting_tail_bound) {
    for (double mean : {0.5, 5.0, 20.0, 100.0}) {
        for (double eps : {1e-6, 1e-12}) {
            const auto [cutoff, tail] = poisson_cutoff(mean, eps);
            EXPECT_LT(tail, eps);
            // Brute-force Poisson tail just below the cutoff.
            double below = 0.0;
            for (int n = cutoff; n < cutoff + 400; ++n) {
                below += std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
            }
            EXPECT_GE(below, eps) << "mean " << mean << " eps " << eps;
        }
    }
}

TEST(coherent_vacuum, rejects_large_alpha) {
    try {
        coherent_vacuum(CoherentSpec{11.0});
        FAIL() << "expected AlphaTooLarge";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::AlphaTooLarge);
    }
    EXPECT_NO_THROW(coherent_vacuum(CoherentSpec{10.0}));
    EXPECT_THROW(coherent_vacuum(CoherentSpec{1.0, 0.0}), Error);
}

TEST(coherent_vacuum, survives_beam_splitter_as_product_of_poissons) {
    const double nbar = 6.0;
    const auto out = beam_splitter(coherent_vacuum(CoherentSpec{std::sqrt(nbar), 1e-20}),
                                   BeamSplitterConvention::IReflect);
    const auto dist = joint_distribution(out);
    const double half = nbar / 2.0;
    double err = 0.0;
    for (int i = 0; i <= 25; ++i) {
        for (int j = 0; j <= 25; ++j) {
            const double expected = std::exp(-nbar + (i + j) * std::log(half) - std::lgamma(i + 1.0) -
                                             std::lgamma(j + 1.0));
            err = std::max(err, std::abs(dist.at(i, j) - expected));
        }
    }
    EXPECT_LT(err, 1e-13);
}

TEST(number_state, basics) {
    const auto s = number_state(1, 0);
    EXPECT_EQ(s.size(), 1u);
    EXPECT_EQ(s.cutoff(), 1);
    EXPECT_EQ(twin_fock(3).amplitude(3, 3), Amplitude(1.0, 0.0));
    EXPECT_EQ(twin_fock(3).cutoff(), 6);
    try {
        number_state(-1, 0);
        FAIL() << "expected NegativeCount";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NegativeCount);
    }
}

TEST(noon, single_photon_matches_beam_splitter) {
    const auto s = noon(NoonSpec{1, std::numbers::pi / 2.0});
    EXPECT_LT(test_util::max_amplitude_error(s, beam_splitter(number_state(1, 0), BeamSplitterConvention::IReflect)),
              1e-15);
}

TEST(noon, joint_distribution_n10) {
    const auto dist = joint_distribution(noon(NoonSpec{10, 0.3}));
    EXPECT_EQ(dist.probabilities.size(), 2u);
    EXPECT_NEAR(dist.at(10, 0), 0.5, 1e-15);
    EXPECT_NEAR(dist.at(0, 10), 0.5, 1e-15);
}

TEST(noon, relative_phase_after_shift) {
    const double phi = 0.77;
    const auto s = phase_shift(noon(NoonSpec{2, 0.0}), phi);
    EXPECT_NEAR(std::abs(s.amplitude(0, 2) / s.amplitude(2, 0) - std::polar(1.0, 2.0 * phi)), 0.0, 1e-15);
}

TEST(noon, default_phase_rule) {
    EXPECT_EQ(default_noon_phase(4), 0.0);
    EXPECT_EQ(default_noon_phase(3), std::numbers::pi / 2.0);
    EXPECT_THROW(noon(NoonSpec{0, 0.0}), Error);
}

TEST(arcsine, small_orders) {
    const double r = std::numbers::sqrt2 / 2.0;
    const auto s1 = arcsine_state(1);
    EXPECT_NEAR(s1.amplitude(2, 0).real(), r, 1e-15);
    EXPECT_NEAR(s1.amplitude(0, 2).real(), -r, 1e-15);

    const auto s2 = arcsine_state(2);
    EXPECT_NEAR(s2.amplitude(4, 0).real(), std::sqrt(3.0 / 8.0), 1e-15);
    EXPECT_NEAR(s2.amplitude(0, 4).real(), std::sqrt(3.0 / 8.0), 1e-15);
    EXPECT_NEAR(s2.amplitude(2, 2).real(), -0.5, 1e-15);
    // A_0^2 = (1/16) * C(0,0) * C(4,2) = 3/8.
    EXPECT_NEAR(std::pow(arcsine_coefficients(2)[0], 2), 3.0 / 8.0, 1e-15);
}

TEST(arcsine, coefficients_are_normalized) {
    for (int n = 1; n <= 20; ++n) {
        double sum = 0.0;
        for (double a : arcsine_coefficients(n)) sum += a * a;
        EXPECT_NEAR(sum, 1.0, 1e-12) << "N = " << n;
    }
}

TEST(arcsine, coefficients_match_binomial_formula) {
    for (int n = 1; n <= 12; ++n) {
        const auto coeffs = arcsine_coefficients(n);
        for (int k = 0; k <= n; ++k) {
            const double c1 = std::tgamma(2.0 * k + 1) / std::pow(std::tgamma(k + 1.0), 2);
            const double c2 = std::tgamma(2.0 * (n - k) + 1) / std::pow(std::tgamma(n - k + 1.0), 2);
            const double expected = ((n - k) % 2 ? -1.0 : 1.0) / std::pow(2.0, n) * std::sqrt(c1 * c2);
            EXPECT_NEAR(coeffs[k], expected, 1e-14);
        }
    }
}

TEST(arcsine, equals_beam_splitter_image_of_twin_fock) {
    for (int n = 1; n <= 10; ++n) {
        const auto image = beam_splitter(twin_fock(n), BeamSplitterConvention::RealAsymmetric);
        const auto state = arcsine_state(n);
        // Align global phase on the |2N, 0> component.
        const Amplitude phase = state.amplitude(2 * n, 0) / image.amplitude(2 * n, 0);
        EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
        double err = 0.0;
        for (const auto &[key, amp] : image.amplitudes()) {
            err = std::max(err, std::abs(amp * phase - state.amplitude(key.n_a, key.n_b)));
        }
        EXPECT_LT(err, 1e-12) << "N = " << n;
        EXPECT_EQ(image.pruned(1e-12).size(), state.size());
    }
}

TEST(entangled_coherent, norm_before_normalization) {
    const auto raw = entangled_coherent_unnormalized(1.0, 0.0, 0.0);
    // Branch overlap <alpha,0|0,alpha> = e^{-|alpha|^2}.
    EXPECT_NEAR(raw.norm_squared(), 2.0 + 2.0 * std::exp(-1.0), 1e-12);

    for (double rel : {0.0, 1.0, 2.5}) {
        const auto tiny = entangled_coherent_unnormalized(1e-4, rel, 0.3);
        EXPECT_NEAR(tiny.norm_squared(), 2.0 + 2.0 * std::cos(rel), 1e-7);
    }
}

TEST(entangled_coherent, degenerates_at_pi_for_vanishing_alpha) {
    try {
        entangled_coherent(0.0, std::numbers::pi, 0.0);
        FAIL() << "expected ZeroNorm";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroNorm);
    }
}

TEST(entangled_coherent, large_alpha_approaches_two) {
    const auto raw = entangled_coherent_unnormalized(5.0, 0.4, 1.0);
    EXPECT_NEAR(raw.norm_squared(), 2.0, 1e-10);
    const auto s = entangled_coherent(5.0, 0.4, 1.0);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    EXPECT_NEAR(mean_photon(s, Mode::a), 12.5, 1e-8);
    EXPECT_NEAR(mean_photon(s, Mode::b), 12.5, 1e-8);
}

TEST(entangled_coherent, rejects_large_alpha) {
    EXPECT_THROW(entangled_coherent(12.0, 0.0, 0.0), Error);
}
