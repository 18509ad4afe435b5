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

#include <functional>
#include <string>
#include <string_view>

#include "fockmzi/error.hpp"
#include "fockmzi/fock_space.hpp"
#include "fockmzi/optical_elements.hpp"
#include "fockmzi/state_factory.hpp"

namespace fockmzi {

enum class FamilyKind { Vacuum, Coherent, Number, TwinFock, Noon, Arcsine, EntangledCoherent };

inline std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Vacuum: return "vacuum";
        case FamilyKind::Coherent: return "coherent";
        case FamilyKind::Number: return "number";
        case FamilyKind::TwinFock: return "twin-fock";
        case FamilyKind::Noon: return "noon";
        case FamilyKind::Arcsine: return "arcsine";
        case FamilyKind::EntangledCoherent: return "entangled-coherent";
    }
    return "?";
}

inline FamilyKind parse_family(std::string_view name) {
    for (auto kind : {FamilyKind::Vacuum, FamilyKind::Coherent, FamilyKind::Number, FamilyKind::TwinFock,
                      FamilyKind::Noon, FamilyKind::Arcsine, FamilyKind::EntangledCoherent}) {
        if (name == to_string(kind)) {
            return kind;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown state family '" + std::string(name) + "'");
}

/// BS2 convention under which twin-Fock parity follows P_N(cos 2 phi).
/// Established by the pinning probe in verify.hpp, which the test suite re-runs.
inline constexpr BeamSplitterConvention kTwinFockBs2 = BeamSplitterConvention::IReflect;

/// A named state family with its parameters. Vacuum, coherent, number and
/// twin-Fock states are interferometer inputs and pass through BS1; NOON,
/// arcsine and entangled-coherent states already describe the field between
/// the splitters, so only the phase shift and BS2 act on them.
struct StateFamily {
    FamilyKind kind = FamilyKind::Vacuum;
    Amplitude alpha{};
    int n_a = 0;
    int n_b = 0;
    int n = 1;
    double phi_n = 0.0;
    double rel_phase = 0.0;
    double theta = 0.0;
    double tail_epsilon = kDefaultTailEpsilon;

    bool enters_first_splitter() const {
        return kind == FamilyKind::Vacuum || kind == FamilyKind::Coherent || kind == FamilyKind::Number ||
               kind == FamilyKind::TwinFock;
    }

    TwoModeState state() const {
        switch (kind) {
            case FamilyKind::Vacuum: return number_state(0, 0);
            case FamilyKind::Coherent: return coherent_vacuum(CoherentSpec{alpha, tail_epsilon});
            case FamilyKind::Number: return number_state(n_a, n_b);
            case FamilyKind::TwinFock: return twin_fock(n);
            case FamilyKind::Noon: return noon(NoonSpec{n, phi_n});
            case FamilyKind::Arcsine: return arcsine_state(n);
            case FamilyKind::EntangledCoherent: return entangled_coherent(alpha, rel_phase, theta, tail_epsilon);
        }
        throw Error(ErrorCode::InvalidArgument, "unknown state family");
    }

    /// Splitter conventions matching the family's usual setup.
    MziConfig default_config() const {
        if (kind == FamilyKind::TwinFock || kind == FamilyKind::Arcsine) {
            return MziConfig{BeamSplitterConvention::RealAsymmetric, kTwinFockBs2};
        }
        return MziConfig{};
    }
};

using Preparation = std::function<TwoModeState(double)>;

/// phi -> output state of the interferometer fed by `family`.
inline Preparation make_preparation(const StateFamily &family, const MziConfig &config) {
    auto state = family.state();
    if (family.enters_first_splitter()) {
        auto inside = beam_splitter(state, config.bs1);
        return [inside = std::move(inside), bs2 = config.bs2](double phi) {
            return beam_splitter(phase_shift(inside, phi, Mode::b), bs2);
        };
    }
    return [state = std::move(state), bs2 = config.bs2](double phi) {
        return beam_splitter(phase_shift(state, phi, Mode::b), bs2);
    };
}

inline Preparation make_preparation(const StateFamily &family) {
    return make_preparation(family, family.default_config());
}

}  // namespace fockmzi
