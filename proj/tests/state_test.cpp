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

#include "clusterdyn/state.hpp"

#include <numbers>

#include "gtest/gtest.h"
#include "support/bridge.hpp"
#include "support/oracle.hpp"

using namespace clusterdyn;

TEST(state, cluster_state_is_stabilized) {
    for (Lattice l : {Lattice::line(4), Lattice::square(2, 3), Lattice::star(3)}) {
        DensityMatrix c = cluster_state(l);
        for (int s = 0; s < l.size(); ++s) EXPECT_NEAR(c.expectation(stabilizer(l, s)), 1.0, 1e-12);
        EXPECT_NEAR(c.purity(), 1.0, 1e-12);
    }
}

TEST(state, thermal_cluster_matches_gibbs_state) {
    Lattice l = Lattice::square(2, 2);
    auto edges = bridge::edges(l);
    for (double kT : {0.1, 0.5, 2.0}) {
        oracle::Mat h = oracle::Mat::Zero(16, 16);
        for (int s = 0; s < 4; ++s) h -= 0.5 * oracle::stabilizer(edges, 4, s);
        oracle::Mat g = (-h / kT).exp();
        g /= g.trace();
        EXPECT_LT(bridge::max_abs(thermal_cluster_state(l, kT, 1.0).matrix() - g), 1e-13) << kT;
    }
}

TEST(state, z_error_probability_values) {
    ASSERT_EQ(z_error_probability(0, 1), 0.0);
    ASSERT_NEAR(z_error_probability(1, 1), 1 / (1 + std::exp(1.0)), 1e-16);
    ASSERT_EQ(z_error_probability(INFINITY, 1), 0.5);
    ASSERT_THROW(z_error_probability(-1, 1), std::invalid_argument);
    ASSERT_THROW(z_error_probability(1, 0), std::invalid_argument);
}

TEST(state, entangler_matches_dense) {
    Lattice l = Lattice::line(3);
    oracle::Mat rho = oracle::random_mixed(3, 5);
    oracle::Mat u = oracle::entangler(bridge::edges(l), 3);
    DensityMatrix out = entangle(bridge::state(rho), l);
    ASSERT_LT(bridge::max_abs(out.matrix() - u * rho * u.adjoint()), 1e-14);
}

TEST(state, expectation_matches_dense) {
    oracle::Mat rho = oracle::random_mixed(3, 9);
    DensityMatrix d = bridge::state(rho);
    for (const char *s : {"X0", "Y1 Z2", "Z0 X1 Y2", "-1 * Y0 Y2"}) {
        auto p = PauliString::parse(s);
        EXPECT_NEAR(d.expectation(p), oracle::expect(bridge::dense(p, 3), rho), 1e-14) << s;
    }
}

TEST(state, bloch_round_trip) {
    BlochVector r{0.3, -0.4, 0.5};
    BlochVector b = bloch(bloch_to_state(r));
    ASSERT_NEAR(b.x, 0.3, 1e-15);
    ASSERT_NEAR(b.y, -0.4, 1e-15);
    ASSERT_NEAR(b.z, 0.5, 1e-15);
}

TEST(state, xy_basis_outcomes) {
    // |+> at angle 0 gives outcome 0 with certainty; at pi/2 it is 50/50.
    DensityMatrix plus = states::plus();
    ASSERT_NEAR(outcome_probability(plus, 0, Basis::xy(0), 0), 1.0, 1e-15);
    ASSERT_NEAR(outcome_probability(plus, 0, Basis::xy(std::numbers::pi / 2), 0), 0.5, 1e-15);
    // Outcome 0 at angle phi projects onto +1 of cos(phi) X - sin(phi) Y.
    DensityMatrix mi = states::minus_i();
    ASSERT_NEAR(outcome_probability(mi, 0, Basis::xy(std::numbers::pi / 2), 0), 1.0, 1e-15);
    ASSERT_THROW(measure(plus, {0, Basis::xy(0), 0, 1}, OutcomePolicy::forced(0)), std::domain_error);
    ASSERT_THROW(measure(plus, {1, Basis::xy(0), 0, 0}, OutcomePolicy::forced(0)), std::out_of_range);
}

TEST(state, sampled_policy_is_seeded) {
    DensityMatrix rho = product_state({states::plus(), states::plus(), states::plus()});
    auto run = [&](std::uint64_t seed) {
        auto policy = OutcomePolicy::sampled(seed);
        std::vector<int> out;
        for (int k = 0; k < 20; ++k) out.push_back(measure(rho, {k % 3, Basis::z(), 0, std::nullopt}, policy).outcome);
        return out;
    };
    ASSERT_EQ(run(7), run(7));
    ASSERT_NE(run(7), run(8));
}

TEST(state, forced_sequence_cycles) {
    auto p = OutcomePolicy::forced_sequence({1, 0});
    ASSERT_EQ(p.choose(0.5), 1);
    ASSERT_EQ(p.choose(0.5), 0);
    ASSERT_EQ(p.choose(0.5), 1);
    ASSERT_THROW(OutcomePolicy::forced_sequence({2}), std::invalid_argument);
}

TEST(state, partial_trace_of_product) {
    DensityMatrix a = bloch_to_state({0.1, 0.2, 0.3}), b = bloch_to_state({0, 0, -1}), c = states::plus_i();
    DensityMatrix rho = product_state({a, b, c});
    ASSERT_LT(bridge::max_abs(partial_trace(rho, {1}).matrix() - b.matrix()), 1e-15);
    ASSERT_LT(bridge::max_abs(partial_trace(rho, {0, 2}).matrix() - a.tensor(c).matrix()), 1e-15);
}

TEST(state, fidelity_and_trace_distance) {
    ASSERT_NEAR(fidelity(states::plus(), states::minus()), 0.0, 1e-15);
    ASSERT_NEAR(fidelity(states::plus(), states::zero()), 0.5, 1e-15);
    DensityMatrix a = bloch_to_state({0.2, 0, 0.1}), b = bloch_to_state({0, 0.3, 0});
    // Qubit closed form: F = Tr(ab) + 2 sqrt(det a det b).
    double da = (1 - 0.05) / 4, db = (1 - 0.09) / 4;
    double tr = (a.matrix() * b.matrix()).trace().real();
    ASSERT_NEAR(fidelity(a, b), tr + 2 * std::sqrt(da * db), 1e-12);
    ASSERT_NEAR(trace_distance(states::zero(), states::one()), 1.0, 1e-15);
    ASSERT_NEAR(trace_distance(a, b), 0.5 * std::sqrt(0.04 + 0.09 + 0.01), 1e-12);
}

TEST(state, capacity_limit) {
    ASSERT_THROW(DensityMatrix::maximally_mixed(kMaxQubits + 1), CapacityError);
}
