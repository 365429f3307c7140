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

// Brute-force reference implementations used to check the library. They
// share nothing with it beyond the Eigen types: operators are built by
// Kronecker products and the master equation is integrated by exponentiating
// the full Liouvillian.

#ifndef CLUSTERDYN_TESTS_ORACLE_HPP
#define CLUSTERDYN_TESTS_ORACLE_HPP

#include <complex>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Edges = std::vector<std::pair<int, int>>;

inline Mat I2() { return Mat::Identity(2, 2); }
inline Mat X() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Mat Y() {
    Mat m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
inline Mat Z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
inline Mat letter(char c) {
    switch (c) {
        case 'X': return X();
        case 'Y': return Y();
        case 'Z': return Z();
        default: return I2();
    }
}

/// Site 0 is the leftmost tensor factor.
inline Mat kron_all(const std::vector<Mat> &factors) {
    Mat out = Mat::Identity(1, 1);
    for (const Mat &f : factors) {
        Mat next = Eigen::kroneckerProduct(out, f).eval();
        out = next;
    }
    return out;
}

/// ops[k] is the letter on site k ('I', 'X', 'Y' or 'Z').
inline Mat pauli(const std::string &ops) {
    std::vector<Mat> f;
    for (char c : ops) f.push_back(letter(c));
    return kron_all(f);
}

inline Mat on_site(const Mat &a, int site, int n) {
    std::vector<Mat> f(n, I2());
    f[site] = a;
    return kron_all(f);
}

inline Mat cz(int i, int j, int n) {
    Mat p1(2, 2);
    p1 << 0, 0, 0, 1;
    return Mat::Identity(1 << n, 1 << n) - 2 * on_site(p1, i, n) * on_site(p1, j, n);
}

inline Mat entangler(const Edges &edges, int n) {
    Mat u = Mat::Identity(1 << n, 1 << n);
    for (auto [i, j] : edges) u = cz(i, j, n) * u;
    return u;
}

inline Mat stabilizer(const Edges &edges, int n, int site) {
    Mat k = on_site(X(), site, n);
    for (auto [i, j] : edges) {
        if (i == site) k = k * on_site(Z(), j, n);
        if (j == site) k = k * on_site(Z(), i, n);
    }
    return k;
}

/// Column-stacking vectorisation of -i[H, .] + sum_k D[L_k].
inline Mat liouvillian(const Mat &h, const std::vector<Mat> &jumps) {
    const Eigen::Index d = h.rows();
    Mat id = Mat::Identity(d, d);
    Mat l = cplx(0, -1) * (Eigen::kroneckerProduct(id, h).eval() - Eigen::kroneckerProduct(h.transpose(), id).eval());
    for (const Mat &j : jumps) {
        Mat jd = j.adjoint() * j;
        l += Eigen::kroneckerProduct(j.conjugate(), j).eval();
        l -= 0.5 * Eigen::kroneckerProduct(id, jd).eval();
        l -= 0.5 * Eigen::kroneckerProduct(jd.transpose(), id).eval();
    }
    return l;
}

/// Generator of the cluster master equation in the original picture:
/// H = -(delta/2) sum K_i and jumps U |+><-|_i U, U |-><+|_i U.
inline Mat cluster_liouvillian(const Edges &edges, int n, double delta, double alpha, double beta) {
    Mat h = Mat::Zero(1 << n, 1 << n);
    for (int s = 0; s < n; ++s) h -= (delta / 2) * stabilizer(edges, n, s);
    Mat u = entangler(edges, n);
    Mat pm = (Z() - cplx(0, 1) * Y()) / 2.0;  // |+><-|
    Mat mp = pm.adjoint();
    std::vector<Mat> jumps;
    for (int s = 0; s < n; ++s) {
        if (alpha > 0) jumps.push_back(std::sqrt(alpha) * u * on_site(pm, s, n) * u);
        if (beta > 0) jumps.push_back(std::sqrt(beta) * u * on_site(mp, s, n) * u);
    }
    return liouvillian(h, jumps);
}

inline Mat evolve(const Mat &generator, const Mat &rho, double t) {
    const Eigen::Index d = rho.rows();
    Vec v = Eigen::Map<const Vec>(rho.data(), d * d);
    Mat prop = (generator * t).exp();
    Vec out = prop * v;
    return Eigen::Map<Mat>(out.data(), d, d);
}

/// exp(-H/kT)/Z for the single-site dual Hamiltonian -(delta/2) X.
inline Mat gibbs_qubit(double kT, double delta) {
    Mat g = ((delta / (2 * kT)) * X()).exp();
    return g / g.trace();
}

inline Mat random_pure(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Vec v(1 << n);
    for (auto &x : v) x = cplx(nd(rng), nd(rng));
    v.normalize();
    return v * v.adjoint();
}

inline Mat random_mixed(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Mat g(1 << n, 1 << n);
    for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = cplx(nd(rng), nd(rng));
    Mat rho = g * g.adjoint();
    return rho / rho.trace();
}

inline double expect(const Mat &op, const Mat &rho) { return (op * rho).trace().real(); }

/// All labelled connected simple graphs on n vertices.
inline std::vector<Edges> connected_graphs(int n) {
    Edges all;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
    std::vector<Edges> out;
    for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
        Edges e;
        for (std::size_t k = 0; k < all.size(); ++k)
            if (mask >> k & 1) e.push_back(all[k]);
        std::vector<int> comp(n);
        for (int v = 0; v < n; ++v) comp[v] = v;
        auto find = [&](int v) {
            while (comp[v] != v) v = comp[v];
            return v;
        };
        for (auto [i, j] : e) comp[find(i)] = find(j);
        bool ok = true;
        for (int v = 1; v < n; ++v) ok = ok && find(v) == find(0);
        if (ok) out.push_back(e);
    }
    return out;
}

}  // namespace oracle

#endif  // CLUSTERDYN_TESTS_ORACLE_HPP
