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

#include "clusterdyn/eom.hpp"

#include <numbers>

#include "gtest/gtest.h"
#include "support/bridge.hpp"
#include "support/oracle.hpp"

using namespace clusterdyn;

namespace {

// Row of variable p: diagonal rate in units of (alpha+beta) and the source
// terms (variable, coefficient of alpha-beta).
struct RowView {
    double rate;
    std::vector<std::pair<std::string, double>> sources;
};

RowView row_of(const EOMSystem &sys, const char *p) {
    std::size_t j = sys.index_of(PauliString::parse(p));
    RowView r{-0.5 * sys.rows[j].decay_halves, {}};
    for (auto &s : sys.rows[j].sources) r.sources.emplace_back(sys.variables[s.var].label(), s.coef);
    return r;
}

EOMContext line_context() {
    // Site 0 measured in the plane, logical state on 1, site 2 still in equilibrium.
    EOMContext c;
    c.lattice = Lattice::line(3);
    c.measured[0] = {Basis::xy(0.3), 0};
    c.logical = {1};
    c.equilibrium = {2};
    return c;
}

EOMContext star_context(int k) {
    EOMContext c;
    c.lattice = Lattice::star(k);
    c.logical = {0};
    for (int j = 1; j <= k; ++j) c.measured[j] = {Basis::xy(0.2 * j), j % 2};
    return c;
}

// <M>(t) in the interaction picture from exponentiating the full Liouvillian.
double oracle_value(const Lattice &l, const oracle::Mat &rho0, const PauliString &m, double a, double b, double t) {
    const int n = l.size();
    auto edges = bridge::edges(l);
    oracle::Mat rho = oracle::evolve(oracle::cluster_liouvillian(edges, n, 1.0, a, b), rho0, t);
    oracle::Mat h = oracle::Mat::Zero(1 << n, 1 << n);
    for (int s = 0; s < n; ++s) h -= 0.5 * oracle::stabilizer(edges, n, s);
    oracle::Mat u = (std::complex<double>(0, t) * h).exp();
    return oracle::expect(bridge::dense(m, n), u * rho * u.adjoint());
}

}  // namespace

TEST(eom, line_coefficient_table) {
    EOMContext c = line_context();
    EOMSystem x = build_eom(PauliString::parse("X1"), c, 0.02, 0.005);
    RowView rx = row_of(x, "X1");
    ASSERT_DOUBLE_EQ(rx.rate, -1.5);
    ASSERT_EQ(rx.sources.size(), 1u);
    ASSERT_EQ(rx.sources[0].first, "Z0");
    ASSERT_DOUBLE_EQ(rx.sources[0].second, 1.0);
    ASSERT_DOUBLE_EQ(row_of(x, "Z0").rate, -0.5);
    ASSERT_DOUBLE_EQ(row_of(build_eom(PauliString::parse("Y1"), c, 0.02, 0.005), "Y1").rate, -1.0);
    ASSERT_DOUBLE_EQ(row_of(build_eom(PauliString::parse("Z1"), c, 0.02, 0.005), "Z1").rate, -0.5);
    ASSERT_EQ(x.str(), "d/dt <Z0> = -1/2 (α+β) <Z0>\nd/dt <X1> = -3/2 (α+β) <X1> + (α-β) <Z0>\n");
}

TEST(eom, star_coefficient_tables) {
    for (int k = 1; k <= 4; ++k) {
        EOMContext c = star_context(k);
        std::string zs;
        for (int j = 1; j <= k; ++j) zs += (j > 1 ? " Z" : "Z") + std::to_string(j);
        EOMSystem x = build_eom(PauliString::parse("X0"), c, 0.02, 0.005);
        RowView rx = row_of(x, "X0");
        EXPECT_DOUBLE_EQ(rx.rate, -(k + 2) / 2.0) << k;
        ASSERT_EQ(rx.sources.size(), 1u);
        EXPECT_EQ(rx.sources[0].first, PauliString::parse(zs).label());
        EXPECT_DOUBLE_EQ(rx.sources[0].second, 1.0);
        EXPECT_DOUBLE_EQ(row_of(x, zs.c_str()).rate, -k / 2.0) << k;
        EXPECT_DOUBLE_EQ(row_of(build_eom(PauliString::parse("Y0"), c, 0.02, 0.005), "Y0").rate, -(k + 1) / 2.0);
        EXPECT_DOUBLE_EQ(row_of(build_eom(PauliString::parse("Z0"), c, 0.02, 0.005), "Z0").rate, -0.5);
        EXPECT_TRUE(x.lower_triangular());
        EXPECT_TRUE(x.decoupling.decoupled);
    }
}

TEST(eom, single_site_solution_is_exponential) {
    EOMContext c = line_context();
    c.logical_bloch[1] = {0.6, 0.0, 0.8};
    EOMSystem x = build_eom(PauliString::parse("X1"), c, 0.02, 0.005);
    // <Z0> starts at zero after an in-plane measurement, so <X1> decays alone.
    for (double t : {0.5, 3.0, 10.0}) EXPECT_NEAR(solve_root(x, t), 0.6 * std::exp(-1.5 * 0.025 * t), 1e-14);
    EOMSystem z = build_eom(PauliString::parse("Z1"), c, 0.02, 0.005);
    EXPECT_NEAR(solve_root(z, 4.0), 0.8 * std::exp(-0.5 * 0.025 * 4.0), 1e-14);
}

TEST(eom, full_lattice_matches_dense_oracle) {
    const double tau = 2 * std::numbers::pi;
    for (Lattice l : {Lattice::line(3), Lattice::star(3), Lattice(3, {{0, 1}, {1, 2}, {0, 2}})}) {
        oracle::Mat rho0 = oracle::random_mixed(l.size(), 17);
        auto init = initial_values_from_state(bridge::state(rho0));
        for (const char *obs : {"X1", "Y0 Z1", "Z0 X2", "Y1 Y2"}) {
            auto m = PauliString::parse(obs);
            EOMSystem sys = build_eom(m, EOMContext::full(l), 0.02, 0.005, init);
            for (double t : {tau / 4, tau}) {
                EXPECT_NEAR(solve_root(sys, t), oracle_value(l, rho0, m, 0.02, 0.005, t), 1e-12)
                    << l.str() << ' ' << obs << " t=" << t;
            }
        }
    }
}

TEST(eom, solution_at_zero_is_initial_value) {
    Lattice l = Lattice::square(2, 2);
    DensityMatrix rho = bridge::state(oracle::random_mixed(4, 1));
    EOMSystem sys = build_eom(PauliString::parse("X0 Y3"), EOMContext::full(l), 0.03, 0.01, initial_values_from_state(rho));
    Eigen::VectorXd v = solve_eom(sys, 0.0);
    for (std::size_t k = 0; k < sys.size(); ++k) EXPECT_NEAR(v(k), rho.expectation(sys.variables[k]), 1e-15);
}

TEST(eom, matrix_form) {
    EOMSystem x = build_eom(PauliString::parse("X1"), line_context(), 0.03, 0.01);
    Eigen::MatrixXd a = x.matrix();
    std::size_t i = x.index_of(PauliString::parse("X1")), j = x.index_of(PauliString::parse("Z0"));
    ASSERT_NEAR(a(i, i), -1.5 * 0.04, 1e-16);
    ASSERT_NEAR(a(i, j), 0.02, 1e-16);
    ASSERT_NEAR(a(j, j), -0.5 * 0.04, 1e-16);
}

TEST(eom, decoupling_violation_is_reported) {
    EOMContext c;
    c.lattice = Lattice::line(3);
    c.measured[0] = {Basis::z(), 0};
    c.logical = {1};
    c.equilibrium = {2};
    DecouplingReport r = check_decoupling(c);
    ASSERT_FALSE(r.decoupled);
    ASSERT_EQ(r.witness, std::vector<int>{1});
    ASSERT_TRUE(check_decoupling(line_context()).decoupled);
}

TEST(eom, rejects_bad_requests) {
    EOMContext c = line_context();
    ASSERT_THROW(build_eom(PauliString::parse("X2"), c, 0.02, 0.005), std::invalid_argument);
    ASSERT_THROW(build_eom(PauliString::parse("+1 * I"), c, 0.02, 0.005), std::invalid_argument);
    ASSERT_THROW(build_eom(PauliString::parse("+i * X1"), c, 0.02, 0.005), std::invalid_argument);
    ASSERT_THROW(build_eom(PauliString::parse("X1"), c, -1, 0.005), std::invalid_argument);
    c.equilibrium.insert(1);
    ASSERT_THROW(build_eom(PauliString::parse("X1"), c, 0.02, 0.005), std::invalid_argument);
}
