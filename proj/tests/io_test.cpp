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

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "clusterdyn/io/csv.hpp"
#include "clusterdyn/io/json.hpp"
#include "gtest/gtest.h"
#include "support/bridge.hpp"

using namespace clusterdyn;
using io::json;

TEST(io, state_round_trip) {
    DensityMatrix rho = bridge::state(oracle::random_mixed(2, 4));
    DensityMatrix back = io::state_from_json(json::parse(io::state_to_json(rho).dump()));
    ASSERT_EQ(back.num_qubits(), 2);
    ASSERT_EQ(back.matrix(), rho.matrix());
}

TEST(io, state_rejects_bad_shape) {
    ASSERT_ANY_THROW(io::state_from_json(json{{"n", 1}, {"data", {{1, 0}, {0, 0}}}}));
}

TEST(io, qubit_and_basis_parsing) {
    ASSERT_EQ(io::qubit_from_json("plus").matrix(), states::plus().matrix());
    ASSERT_EQ(io::qubit_from_json("one").matrix(), states::one().matrix());
    BlochVector b = bloch(io::qubit_from_json(json{0.0, 0.6, 0.8}));
    ASSERT_NEAR(b.y, 0.6, 1e-15);
    ASSERT_ANY_THROW(io::qubit_from_json("sideways"));
    ASSERT_EQ(io::basis_from_json("Z").kind, Basis::Kind::Z);
    ASSERT_DOUBLE_EQ(io::basis_from_json(json{{"xy", 0.25}}).angle, 0.25);
}

TEST(io, pattern_parsing) {
    json j = json::parse(R"({"sites": 3, "input": "plus", "rounds": [
        [{"site": 0, "basis": {"xy": 0}}],
        [{"site": 1, "basis": {"xy": 0.5}, "adapt": {"source-event": 0, "sign-flip": true}}]]})");
    Pattern p = io::pattern_from_json(j);
    ASSERT_EQ(p.num_sites, 3);
    ASSERT_EQ(p.rounds.size(), 2u);
    ASSERT_EQ(p.rounds[1][0].adapt_source, std::optional<std::size_t>(0));
    j["rounds"][1][0]["site"] = 2;
    ASSERT_THROW(io::pattern_from_json(j), std::invalid_argument);
}

TEST(io, bundled_pattern_loads) {
    Pattern p = io::read_pattern_file(CLUSTERDYN_DATA_DIR "/patterns/xrot3.json");
    ASSERT_EQ(p.num_sites, 3);
    ASSERT_THROW(io::read_pattern_file("/nonexistent.json"), std::runtime_error);
}

TEST(io, csv_format) {
    std::ostringstream out;
    io::CsvWriter w(out);
    w.meta("seed", "7");
    w.header({"a", "b"});
    w.row({0.1, 1.0 / 3.0});
    ASSERT_EQ(out.str(), "# seed: 7\na,b\n0.1,0.333333333\n");
    ASSERT_EQ(io::fmt9(std::numbers::pi), "3.14159265");
}
