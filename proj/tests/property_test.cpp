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

// Randomised invariants, each checked over a fixed set of seeds.

#include <random>

#include "clusterdyn/clusterdyn.hpp"
#include "gtest/gtest.h"
#include "support/bridge.hpp"
#include "support/oracle.hpp"

using namespace clusterdyn;

namespace {

struct Quiet : ::testing::Environment {
    void SetUp() override { warning_handler() = nullptr; }
};
const auto *quiet = ::testing::AddGlobalTestEnvironment(new Quiet);

PauliString random_pauli(std::mt19937_64 &rng, int n) {
    std::uniform_int_distribution<int> letter(0, 3), phase(0, 3);
    PauliString::Factors f;
    for (int s = 0; s < n; ++s) {
        int l = letter(rng);
        if (l) f.emplace(s, static_cast<PauliLetter>(l));
    }
    return PauliString(f, Phase::from_power(phase(rng)));
}

Lattice random_connected(std::mt19937_64 &rng, int n) {
    auto graphs = oracle::connected_graphs(n);
    auto e = graphs[std::uniform_int_distribution<std::size_t>(0, graphs.size() - 1)(rng)];
    return Lattice(n, std::vector<Lattice::Edge>(e.begin(), e.end()));
}

}  // namespace

TEST(properties, pauli_product_is_associative_and_dense) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_pauli(rng, 4), b = random_pauli(rng, 4), c = random_pauli(rng, 4);
        ASSERT_EQ((a * b) * c, a * (b * c));
        oracle::Mat ab = bridge::dense(a, 4) * bridge::dense(b, 4);
        ASSERT_LT(bridge::max_abs(bridge::dense(a * b, 4) - ab), 1e-15);
        oracle::Mat comm = ab - bridge::dense(b, 4) * bridge::dense(a, 4);
        ASSERT_EQ(commutes(a, b), bridge::max_abs(comm) < 1e-12);
    }
}

TEST(properties, cz_conjugation_is_an_automorphism) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        Lattice l = random_connected(rng, 4);
        auto a = random_pauli(rng, 4), b = random_pauli(rng, 4);
        ASSERT_EQ(conjugate_by_cz(a * b, l), conjugate_by_cz(a, l) * conjugate_by_cz(b, l));
        ASSERT_EQ(conjugate_by_cz(conjugate_by_cz(a, l), l), a);
    }
}

TEST(properties, evolution_preserves_physicality) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> rate(0, 0.05), time(0, 20);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 3;
        Lattice l = random_connected(rng, n);
        SystemParams p(1.0, l);
        BathSpec b = BathSpec::single(rate(rng), rate(rng));
        DensityMatrix rho = bridge::state(oracle::random_mixed(n, 100 + trial));
        double t = time(rng);
        for (Integrator integ : {Integrator::RK4, Integrator::ExactKraus}) {
            PhysicalityReport r = evolve(rho, p, b, Picture::Original, t, {integ}).physicality();
            ASSERT_LT(r.trace_deviation, 1e-9);
            ASSERT_GT(r.min_eigenvalue, -1e-9);
            ASSERT_LT(r.hermiticity_error, 1e-9);
        }
    }
}

TEST(properties, exact_flow_is_a_semigroup) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> rate(0, 0.05), time(0, 5);
    for (int trial = 0; trial < 20; ++trial) {
        Lattice l = random_connected(rng, 3);
        SystemParams p(1.0, l);
        BathSpec b = BathSpec::single(rate(rng), rate(rng));
        DensityMatrix rho = bridge::state(oracle::random_mixed(3, 200 + trial));
        double t1 = time(rng), t2 = time(rng);
        EvolveOptions ex{Integrator::ExactKraus};
        DensityMatrix two = evolve(evolve(rho, p, b, Picture::Original, t1, ex), p, b, Picture::Original, t2, ex);
        DensityMatrix one = evolve(rho, p, b, Picture::Original, t1 + t2, ex);
        ASSERT_LT(bridge::max_abs(two.matrix() - one.matrix()), 1e-13);
    }
}

TEST(properties, measurement_probabilities_sum_to_one) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        DensityMatrix rho = bridge::state(oracle::random_mixed(3, 300 + trial));
        Basis basis = trial % 5 == 0 ? Basis::z() : Basis::xy(angle(rng));
        int site = trial % 3;
        double p0 = outcome_probability(rho, site, basis, 0), p1 = outcome_probability(rho, site, basis, 1);
        ASSERT_NEAR(p0 + p1, 1.0, 1e-14);
        MeasureResult m = measure(rho, {site, basis, 0, std::nullopt}, OutcomePolicy::sampled(trial));
        ASSERT_NEAR(m.state.trace().real(), 1.0, 1e-14);
        // Repeating the measurement gives the same outcome with certainty.
        ASSERT_NEAR(outcome_probability(m.state, site, basis, m.outcome), 1.0, 1e-12);
    }
}

TEST(properties, channel_family_is_valid) {
    for (int k = 1; k <= 100; ++k) {
        double w = k / 100.0;
        for (auto v : {LatticeVariant::Line, LatticeVariant::Cubic}) {
            PauliChannel c = logical_channel(w, v);
            ASSERT_TRUE(c.valid(1e-12));
            ASSERT_NEAR(c.p1 + c.p2 + c.p3 + c.p4, 1.0, 1e-12);
        }
    }
}

TEST(properties, fidelity_is_symmetric_and_bounded) {
    for (int trial = 0; trial < 30; ++trial) {
        DensityMatrix a = bridge::state(oracle::random_mixed(2, 400 + trial));
        DensityMatrix b = bridge::state(oracle::random_mixed(2, 500 + trial));
        double f = fidelity(a, b);
        ASSERT_NEAR(f, fidelity(b, a), 1e-10);
        ASSERT_GE(f, -1e-12);
        ASSERT_LE(f, 1 + 1e-12);
        ASSERT_NEAR(fidelity(a, a), 1.0, 1e-10);
        // Fuchs-van de Graaf: 1 - sqrt(F) <= D <= sqrt(1 - F).
        double d = trace_distance(a, b);
        ASSERT_LE(1 - std::sqrt(f), d + 1e-10);
        ASSERT_LE(d, std::sqrt(1 - f) + 1e-10);
    }
}

TEST(properties, eom_matches_oracle_on_random_graphs) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        Lattice l = random_connected(rng, 3);
        oracle::Mat rho0 = oracle::random_mixed(3, 600 + trial);
        PauliString m = random_pauli(rng, 3).unsigned_part();
        if (m.has_identity_support()) continue;
        EOMSystem sys = build_eom(m, EOMContext::full(l), 0.03, 0.01, initial_values_from_state(bridge::state(rho0)));
        ASSERT_TRUE(sys.lower_triangular());
        SystemParams p(1.0, l);
        DensityMatrix moved = evolve(bridge::state(rho0), p, BathSpec::single(0.03, 0.01), Picture::Original, 2.5,
                                     {Integrator::ExactKraus});
        ASSERT_NEAR(solve_root(sys, 2.5), interaction_picture(moved, p, 2.5).expectation(m), 1e-12);
    }
}
