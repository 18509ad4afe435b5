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
#include <cstdio>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fockmzi/detection.hpp"
#include "fockmzi/fock_space.hpp"
#include "fockmzi/metrology.hpp"

namespace fockmzi::io {

/// 17 significant digits, lowercase exponent; "inf"/"-inf"/"nan" otherwise.
inline std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
    return buf;
}

// JSON has no infinities; non-finite values become null.
inline nlohmann::json json_number(double value) {
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return value;
}

inline std::string state_csv(const TwoModeState &state) {
    std::ostringstream out;
    out << "# norm=" << format_double(std::sqrt(state.norm_squared()))
        << ",truncation_loss=" << format_double(state.truncation_loss()) << ",cutoff=" << state.cutoff() << '\n';
    out << "n_a,n_b,re,im,probability\n";
    for (const auto &[key, amp] : state.amplitudes()) {
        out << key.n_a << ',' << key.n_b << ',' << format_double(amp.real()) << ',' << format_double(amp.imag()) << ','
            << format_double(std::norm(amp)) << '\n';
    }
    return out.str();
}

inline nlohmann::json state_json(const TwoModeState &state) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &[key, amp] : state.amplitudes()) {
        rows.push_back({{"n_a", key.n_a},
                        {"n_b", key.n_b},
                        {"re", json_number(amp.real())},
                        {"im", json_number(amp.imag())},
                        {"probability", json_number(std::norm(amp))}});
    }
    return {{"norm", json_number(std::sqrt(state.norm_squared()))},
            {"truncation_loss", json_number(state.truncation_loss())},
            {"cutoff", state.cutoff()},
            {"rows", std::move(rows)}};
}

inline std::string signal_csv(const SweepTable &table) {
    std::ostringstream out;
    out << "phi,mean,variance,snr\n";
    for (const auto &row : table.rows) {
        const double ratio = snr(ObservableResult{row.mean, row.variance, table.metadata.observable.tag});
        out << format_double(row.abscissa) << ',' << format_double(row.mean) << ',' << format_double(row.variance)
            << ',' << format_double(ratio) << '\n';
    }
    return out.str();
}

inline nlohmann::json metadata_json(const SweepMetadata &meta) {
    return {{"family", meta.family},
            {"observable", std::string(to_string(meta.observable.tag))},
            {"bs1", std::string(to_string(meta.config.bs1))},
            {"bs2", std::string(to_string(meta.config.bs2))},
            {"phi_n", json_number(meta.phi_n)},
            {"step", json_number(meta.step)}};
}

inline nlohmann::json signal_json(const SweepTable &table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : table.rows) {
        const double ratio = snr(ObservableResult{row.mean, row.variance, table.metadata.observable.tag});
        rows.push_back({{"phi", json_number(row.abscissa)},
                        {"mean", json_number(row.mean)},
                        {"variance", json_number(row.variance)},
                        {"snr", json_number(ratio)}});
    }
    auto doc = metadata_json(table.metadata);
    doc["rows"] = std::move(rows);
    return doc;
}

inline void uncertainty_csv_rows(std::ostringstream &out, const SweepTable &table) {
    for (const auto &row : table.rows) {
        out << format_double(row.phi) << ',' << static_cast<long>(std::lround(row.abscissa)) << ','
            << format_double(row.delta_phi.value_or(std::nan(""))) << ',' << format_double(row.sql) << ','
            << format_double(row.hl) << ',' << (row.diverged ? "true" : "false") << '\n';
    }
}

inline std::string uncertainty_csv(const std::vector<SweepTable> &tables) {
    std::ostringstream out;
    out << "phi,two_n,delta_phi,sql,hl,diverged\n";
    for (const auto &table : tables) {
        uncertainty_csv_rows(out, table);
    }
    return out.str();
}

inline nlohmann::json uncertainty_json(const std::vector<SweepTable> &tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &table : tables) {
        for (const auto &row : table.rows) {
            rows.push_back({{"phi", json_number(row.phi)},
                            {"two_n", std::lround(row.abscissa)},
                            {"delta_phi", json_number(row.delta_phi.value_or(std::nan("")))},
                            {"sql", json_number(row.sql)},
                            {"hl", json_number(row.hl)},
                            {"diverged", row.diverged}});
        }
    }
    return {{"family", "twin-fock"}, {"observable", "parity_b"}, {"rows", std::move(rows)}};
}

inline std::string joint_csv(const JointDistribution &dist) {
    std::ostringstream out;
    out << "n_a,n_b,probability\n";
    for (const auto &[key, p] : dist.probabilities) {
        out << key.n_a << ',' << key.n_b << ',' << format_double(p) << '\n';
    }
    return out.str();
}

inline nlohmann::json joint_json(const JointDistribution &dist) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &[key, p] : dist.probabilities) {
        rows.push_back({{"n_a", key.n_a}, {"n_b", key.n_b}, {"probability", json_number(p)}});
    }
    return {{"total", json_number(dist.total())}, {"rows", std::move(rows)}};
}

}  // namespace fockmzi::io
