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

#include "clusterdyn/pauli.hpp"

#include "gtest/gtest.h"
#include "support/bridge.hpp"
#include "support/oracle.hpp"

using namespace clusterdyn;

TEST(pauli, parse_and_print) {
    PauliString p = PauliString::parse("+1 * Z0 X1 Z2");
    ASSERT_EQ(p.str(), "+1 * Z0 X1 Z2");
    ASSERT_EQ(p.label(), "Z0X1Z2");
    ASSERT_EQ(PauliString::parse("Z0 Z1").str(), "+1 * Z0 Z1");
    ASSERT_EQ(PauliString::parse("-i * Y3").phase(), Phase::minus_i());
    ASSERT_TRUE(PauliString::parse("+1 * I").is_identity());
    ASSERT_EQ(PauliString::parse(p.str()), p);
}

TEST(pauli, parse_rejects_garbage) {
    ASSERT_THROW(PauliString::parse("Q0"), std::invalid_argument);
    ASSERT_THROW(PauliString::parse("X0 X0"), std::invalid_argument);
    ASSERT_THROW(PauliString::parse("X"), std::invalid_argument);
}

TEST(pauli, single_site_products) {
    auto X = PauliString::parse("X0"), Y = PauliString::parse("Y0"), Z = PauliString::parse("Z0");
    ASSERT_EQ(X * Y, Z.with_phase(Phase::plus_i()));
    ASSERT_EQ(Y * Z, X.with_phase(Phase::plus_i()));
    ASSERT_EQ(Z * X, Y.with_phase(Phase::plus_i()));
    ASSERT_EQ(Y * X, Z.with_phase(Phase::minus_i()));
    ASSERT_TRUE((X * X).is_identity());
}

TEST(pauli, product_with_phase) {
    // (X0 Z1)(Z0 Z1) = XZ (x) I = -i Y0.
    auto p = PauliString::parse("X0 Z1") * PauliString::parse("Z0 Z1");
    ASSERT_EQ(p.str(), "-i * Y0");
}

TEST(pauli, product_matches_dense) {
    const char *cases[][2] = {{"X0 Y1 Z2", "Y0 Y1 X2"}, {"-1 * Z0 X2", "+i * X0 X1"}, {"Y0 Y1 Y2", "Z0 X1 Y2"}};
    for (auto &c : cases) {
        auto a = PauliString::parse(c[0]), b = PauliString::parse(c[1]);
        oracle::Mat expect = bridge::dense(a, 3) * bridge::dense(b, 3);
        EXPECT_LT(bridge::max_abs(bridge::dense(a * b, 3) - expect), 1e-15) << c[0] << " * " << c[1];
    }
}

TEST(pauli, commutation) {
    ASSERT_TRUE(commutes(PauliString::parse("X0 X1"), PauliString::parse("Z0 Z1")));
    ASSERT_TRUE(anticommutes(PauliString::parse("X0"), PauliString::parse("Z0 Z1")));
    ASSERT_TRUE(commutes(PauliString::parse("X0"), PauliString::parse("Z1")));
}

TEST(pauli, stabilizers_of_a_line) {
    Lattice l = Lattice::line(3);
    ASSERT_EQ(stabilizer(l, 0).str(), "+1 * X0 Z1");
    ASSERT_EQ(stabilizer(l, 1).str(), "+1 * Z0 X1 Z2");
    ASSERT_EQ(stabilizer(l, 2).str(), "+1 * Z1 X2");
    ASSERT_THROW(stabilizer(l, 3), std::out_of_range);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) ASSERT_TRUE(commutes(stabilizer(l, a), stabilizer(l, b)));
}

TEST(pauli, cz_conjugation_matches_dense) {
    Lattice l = Lattice::square(2, 2);
    oracle::Mat u = oracle::entangler(bridge::edges(l), 4);
    for (const char *s : {"X0", "Y1", "Z2", "X0 Y3", "Y0 Y1 Y2 Y3", "-i * X1 Z2"}) {
        auto p = PauliString::parse(s);
        oracle::Mat expect = u * bridge::dense(p, 4) * u.adjoint();
        EXPECT_LT(bridge::max_abs(bridge::dense(conjugate_by_cz(p, l), 4) - expect), 1e-15) << s;
    }
    // X_i maps to the stabilizer K_i.
    ASSERT_EQ(conjugate_by_cz(PauliString::parse("X0"), l), stabilizer(l, 0));
}

TEST(pauli, sum_algebra) {
    PauliSum a(PauliString::parse("X0"), 2.0);
    a.add(PauliString::parse("-1 * Z0"), 1.0);
    PauliSum sq = (a * a).pruned();
    // (2X - Z)^2 = 5 I since XZ + ZX = 0.
    ASSERT_EQ(sq.size(), 1u);
    ASSERT_NEAR(std::abs(sq.terms().begin()->second - 5.0), 0.0, 1e-15);
    PauliSum h(PauliString::parse("+i * Y0"));
    ASSERT_NEAR(std::abs(h.adjoint().terms().begin()->second + std::complex<double>(0, 1)), 0.0, 1e-15);
}
