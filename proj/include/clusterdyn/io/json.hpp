// Copyright 2026 The clusterdyn Authors
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

#ifndef CLUSTERDYN_IO_JSON_HPP
#define CLUSTERDYN_IO_JSON_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include "clusterdyn/mbqc.hpp"
#include "clusterdyn/state.hpp"
#include <json.hpp>

namespace clusterdyn::io {

using json = nlohmann::json;

/// {"n": n, "data": [[re, im], ...]} with entries in row-major order.
inline json state_to_json(const DensityMatrix &state) {
    json data = json::array();
    const Matrix &m = state.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
    return {{"n", state.num_qubits()}, {"data", std::move(data)}};
}

inline DensityMatrix state_from_json(const json &j) {
    const int n = j.at("n").get<int>();
    check_capacity(n);
    const Eigen::Index dim = Eigen::Index{1} << n;
    const json &data = j.at("data");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(dim * dim)) {
        throw std::invalid_argument("state JSON: expected " + std::to_string(dim * dim) + " entries");
    }
    Matrix m(dim, dim);
    for (Eigen::Index k = 0; k < dim * dim; ++k) {
        const json &e = data[static_cast<std::size_t>(k)];
        m(k / dim, k % dim) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return DensityMatrix(n, std::move(m));
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

/// Single-qubit state from a name ("zero", "one", "plus", "minus", "plus_i",
/// "minus_i") or a Bloch triple.
inline DensityMatrix qubit_from_json(const json &j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "zero") return states::zero();
        if (s == "one") return states::one();
        if (s == "plus") return states::plus();
        if (s == "minus") return states::minus();
        if (s == "plus_i") return states::plus_i();
        if (s == "minus_i") return states::minus_i();
        throw std::invalid_argument("unknown state name \"" + s + "\"");
    }
    if (j.is_array() && j.size() == 3) {
        return bloch_to_state({j[0].get<double>(), j[1].get<double>(), j[2].get<double>()});
    }
    throw std::invalid_argument("qubit state must be a name or a Bloch triple");
}

inline Basis basis_from_json(const json &j) {
    if (j.is_string() && j.get<std::string>() == "Z") return Basis::z();
    if (j.is_object() && j.contains("xy")) return Basis::xy(j.at("xy").get<double>());
    throw std::invalid_argument("basis must be \"Z\" or {\"xy\": angle}");
}

/// Pattern file: {"sites": n, "input": ..., "t0": ..., "delay_periods": ...,
/// "rounds": [[{"site": s, "basis": "Z" | {"xy": phi},
///              "adapt": {"source-event": k, "sign-flip": true}}, ...], ...]}.
inline Pattern pattern_from_json(const json &j) {
    Pattern p;
    p.num_sites = j.value("sites", 3);
    p.t0 = j.value("t0", 0.0);
    p.delay_periods = j.value("delay_periods", 1.0);
    if (j.contains("input")) p.input = qubit_from_json(j.at("input"));
    for (const json &round : j.at("rounds")) {
        std::vector<PatternEvent> events;
        for (const json &ev : round) {
            PatternEvent e;
            e.site = ev.at("site").get<int>();
            e.basis = basis_from_json(ev.at("basis"));
            if (ev.contains("adapt")) {
                const json &a = ev.at("adapt");
                if (a.value("sign-flip", true)) e.adapt_source = a.at("source-event").get<std::size_t>();
            }
            events.push_back(e);
        }
        p.rounds.push_back(std::move(events));
    }
    p.validate();
    return p;
}

inline Pattern read_pattern_file(const std::string &path) {
    try {
        return pattern_from_json(read_json_file(path));
    } catch (const json::exception &e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace clusterdyn::io

#endif  // CLUSTERDYN_IO_JSON_HPP
