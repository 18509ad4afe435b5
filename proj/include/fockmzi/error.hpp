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

#include <stdexcept>
#include <string>
#include <string_view>

namespace fockmzi {

enum class ErrorCode {
    ZeroNorm,
    NotNormalized,
    CutoffExceeded,
    NotNoonForm,
    AlphaTooLarge,
    NegativeCount,
    ZeroNoise,
    DegenerateStep,
    NonpositivePhotons,
    InvalidArgument,
    NumericalFailure,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroNorm: return "ZeroNorm";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::CutoffExceeded: return "CutoffExceeded";
        case ErrorCode::NotNoonForm: return "NotNoonForm";
        case ErrorCode::AlphaTooLarge: return "AlphaTooLarge";
        case ErrorCode::NegativeCount: return "NegativeCount";
        case ErrorCode::ZeroNoise: return "ZeroNoise";
        case ErrorCode::DegenerateStep: return "DegenerateStep";
        case ErrorCode::NonpositivePhotons: return "NonpositivePhotons";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace fockmzi
