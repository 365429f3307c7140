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

#ifndef CLUSTERDYN_STATE_HPP
#define CLUSTERDYN_STATE_HPP

#include <Eigen/Dense>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "clusterdyn/lattice.hpp"
#include "clusterdyn/pauli.hpp"

namespace clusterdyn {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

/// Largest register held densely (a 4096 x 4096 complex matrix).
inline constexpr int kMaxQubits = 12;

struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

inline void check_capacity(int n) {
    if (n < 1) {
        throw std::invalid_argument("register needs at least one qubit");
    }
    if (n > kMaxQubits) {
        throw CapacityError(std::to_string(n) + " qubits exceeds the dense capacity of " + std::to_string(kMaxQubits));
    }
}

/// Tolerances for the physicality checks on density matrices.
struct StateTolerance {
    double hermitian = 1e-10;
    double trace = 1e-10;
    double min_eigenvalue = -1e-9;
};

struct PhysicalityReport {
    double trace_deviation = 0;
    double hermiticity_error = 0;
    double min_eigenvalue = 0;

    bool ok(const StateTolerance &tol = {}) const {
        return trace_deviation <= tol.trace && hermiticity_error <= tol.hermitian &&
               min_eigenvalue >= tol.min_eigenvalue;
    }
};

namespace mat2 {
inline Mat2 I() { return Mat2::Identity(); }
inline Mat2 X() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}
inline Mat2 Y() {
    Mat2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
inline Mat2 Z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}
inline Mat2 H() { return (X() + Z()) / std::sqrt(2.0); }
inline Mat2 of(PauliLetter p) {
    switch (p) {
        case PauliLetter::X:
            return X();
        case PauliLetter::Y:
            return Y();
        case PauliLetter::Z:
            return Z();
    }
    return I();
}
/// exp(-i phi X / 2).
inline Mat2 xrot(double phi) { return std::cos(phi / 2) * I() - cplx(0, std::sin(phi / 2)) * X(); }
/// |+><+| and |-><-| and the two |+-> ladder operators.
inline Mat2 plus_proj() { return (I() + X()) / 2.0; }
inline Mat2 minus_proj() { return (I() - X()) / 2.0; }
/// |+><-| = (Z - iY)/2.
inline Mat2 plus_minus() { return (Z() - cplx(0, 1) * Y()) / 2.0; }
/// |-><+| = (Z + iY)/2.
inline Mat2 minus_plus() { return (Z() + cplx(0, 1) * Y()) / 2.0; }
}  // namespace mat2

// Site s of an n-qubit register is bit (n - 1 - s) of the basis index, so
// site 0 is the most significant qubit.
inline std::size_t site_mask(int n, int site) { return std::size_t{1} << (n - 1 - site); }

/// M <- A_site M, with A a single-qubit operator.
inline void apply_1q_left(const Mat2 &a, int n, int site, Matrix &m) {
    const std::size_t mask = site_mask(n, site);
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (std::size_t r0 = 0; r0 < dim; ++r0) {
            if (r0 & mask) continue;
            const std::size_t r1 = r0 | mask;
            cplx v0 = m(r0, c), v1 = m(r1, c);
            m(r0, c) = a(0, 0) * v0 + a(0, 1) * v1;
            m(r1, c) = a(1, 0) * v0 + a(1, 1) * v1;
        }
    }
}

/// M <- M A_site.
inline void apply_1q_right(Matrix &m, const Mat2 &a, int n, int site) {
    const std::size_t mask = site_mask(n, site);
    const std::size_t dim = static_cast<std::size_t>(m.cols());
    for (std::size_t c0 = 0; c0 < dim; ++c0) {
        if (c0 & mask) continue;
        const std::size_t c1 = c0 | mask;
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            cplx v0 = m(r, c0), v1 = m(r, c1);
            m(r, c0) = v0 * a(0, 0) + v1 * a(1, 0);
            m(r, c1) = v0 * a(0, 1) + v1 * a(1, 1);
        }
    }
}

/// A_site M A_site^dagger.
inline Matrix conjugate_1q(const Mat2 &a, int n, int site, Matrix m) {
    apply_1q_left(a, n, site, m);
    apply_1q_right(m, a.adjoint(), n, site);
    return m;
}

/// Bit masks and phase of a PauliString on an n-qubit register:
/// P|b> = coef(b) |b ^ x>.
struct PauliAction {
    std::size_t x = 0;
    std::size_t z = 0;
    cplx base = 1;

    PauliAction(const PauliString &p, int n) {
        int ny = 0;
        for (const auto &[site, letter] : p.factors()) {
            if (site >= n) {
                throw std::out_of_range("Pauli " + p.str() + " acts outside a " + std::to_string(n) + "-qubit register");
            }
            std::size_t m = site_mask(n, site);
            if (letter != PauliLetter::Z) x |= m;
            if (letter != PauliLetter::X) z |= m;
            ny += letter == PauliLetter::Y;
        }
        base = p.phase().value() * Phase::from_power(ny).value();
    }
    cplx coef(std::size_t b) const { return (std::popcount(b & z) & 1) ? -base : base; }
};

inline Matrix pauli_matrix(const PauliString &p, int n) {
    PauliAction act(p, n);
    const std::size_t dim = std::size_t{1} << n;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t b = 0; b < dim; ++b) {
        m(b ^ act.x, b) = act.coef(b);
    }
    return m;
}

/// P M.
inline Matrix pauli_left(const PauliString &p, int n, const Matrix &m) {
    PauliAction act(p, n);
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::size_t src = static_cast<std::size_t>(r) ^ act.x;
        out.row(r) = act.coef(src) * m.row(src);
    }
    return out;
}

/// M P.
inline Matrix pauli_right(const Matrix &m, const PauliString &p, int n) {
    PauliAction act(p, n);
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        std::size_t src = static_cast<std::size_t>(c) ^ act.x;
        out.col(c) = m.col(src) * act.coef(static_cast<std::size_t>(c));
    }
    return out;
}

/// Tr(P M).
inline cplx pauli_trace(const PauliString &p, int n, const Matrix &m) {
    PauliAction act(p, n);
    cplx acc = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::size_t src = static_cast<std::size_t>(r) ^ act.x;
        acc += act.coef(src) * m(src, r);
    }
    return acc;
}

/// Dense density matrix of an n-qubit register.
class DensityMatrix {
   public:
    DensityMatrix() = default;
    DensityMatrix(int n, Matrix data) : n_(n), data_(std::move(data)) {
        check_capacity(n);
        const Eigen::Index dim = Eigen::Index{1} << n;
        if (data_.rows() != dim || data_.cols() != dim) {
            throw std::invalid_argument("DensityMatrix: expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                                        " data for " + std::to_string(n) + " qubits");
        }
    }

    static DensityMatrix from_pure(const Vector &psi) {
        int n = qubits_for(psi.size());
        Vector v = psi / psi.norm();
        return DensityMatrix(n, v * v.adjoint());
    }
    static DensityMatrix maximally_mixed(int n) {
        check_capacity(n);
        const Eigen::Index dim = Eigen::Index{1} << n;
        return DensityMatrix(n, Matrix::Identity(dim, dim) / static_cast<double>(dim));
    }
    static DensityMatrix basis_state(int n, std::size_t index) {
        check_capacity(n);
        const Eigen::Index dim = Eigen::Index{1} << n;
        Matrix m = Matrix::Zero(dim, dim);
        m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1;
        return DensityMatrix(n, m);
    }

    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return data_.rows(); }
    const Matrix &matrix() const { return data_; }

    cplx trace() const { return data_.trace(); }
    double purity() const { return (data_ * data_).trace().real(); }

    double expectation(const PauliString &p) const { return pauli_trace(p, n_, data_).real(); }

    Eigen::VectorXd eigenvalues() const {
        Matrix h = (data_ + data_.adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }

    PhysicalityReport physicality() const {
        PhysicalityReport r;
        r.trace_deviation = std::abs(trace() - 1.0);
        r.hermiticity_error = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
        r.min_eigenvalue = eigenvalues().minCoeff();
        return r;
    }

    /// Throws std::domain_error if the state fails the physicality checks.
    void validate(const StateTolerance &tol = {}) const {
        auto r = physicality();
        if (!r.ok(tol)) {
            throw std::domain_error("unphysical density matrix: trace deviation " + std::to_string(r.trace_deviation) +
                                    ", hermiticity error " + std::to_string(r.hermiticity_error) +
                                    ", min eigenvalue " + std::to_string(r.min_eigenvalue));
        }
    }

    /// Returns this state rescaled to unit trace.
    DensityMatrix normalized() const {
        cplx t = trace();
        if (std::abs(t) < 1e-300) {
            throw std::domain_error("cannot normalise a zero-trace matrix");
        }
        return DensityMatrix(n_, data_ / t.real());
    }

    /// this (x) other, with this state's sites first.
    DensityMatrix tensor(const DensityMatrix &other) const {
        const Eigen::Index da = dim(), db = other.dim();
        Matrix out(da * db, da * db);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index j = 0; j < da; ++j) {
                out.block(i * db, j * db, db, db) = data_(i, j) * other.data_;
            }
        }
        return DensityMatrix(n_ + other.n_, std::move(out));
    }

    static int qubits_for(Eigen::Index dim) {
        if (dim < 2 || (dim & (dim - 1)) != 0) {
            throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
        }
        return std::countr_zero(static_cast<std::uint64_t>(dim));
    }

   private:
    int n_ = 0;
    Matrix data_;
};

inline DensityMatrix product_state(const std::vector<DensityMatrix> &factors) {
    if (factors.empty()) {
        throw std::invalid_argument("product_state: no factors");
    }
    DensityMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = out.tensor(factors[k]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bloch vectors.

struct BlochVector {
    double x = 0, y = 0, z = 0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool valid(double tol = 1e-9) const { return norm() <= 1 + tol; }
    double operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }
    bool operator==(const BlochVector &) const = default;
};

inline BlochVector bloch(const DensityMatrix &state) {
    if (state.num_qubits() != 1) {
        throw std::invalid_argument("bloch: expected a single-qubit state, got " +
                                    std::to_string(state.num_qubits()) + " qubits");
    }
    const Matrix &m = state.matrix();
    return {2 * m(1, 0).real(), 2 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

inline DensityMatrix bloch_to_state(const BlochVector &r) {
    if (!r.valid()) {
        throw std::domain_error("Bloch vector outside the unit ball");
    }
    Matrix m = (mat2::I() + r.x * mat2::X() + r.y * mat2::Y() + r.z * mat2::Z()) / 2.0;
    return DensityMatrix(1, m);
}

namespace states {
inline DensityMatrix zero() { return DensityMatrix::basis_state(1, 0); }
inline DensityMatrix one() { return DensityMatrix::basis_state(1, 1); }
inline DensityMatrix plus() { return bloch_to_state({1, 0, 0}); }
inline DensityMatrix minus() { return bloch_to_state({-1, 0, 0}); }
inline DensityMatrix plus_i() { return bloch_to_state({0, 1, 0}); }
inline DensityMatrix minus_i() { return bloch_to_state({0, -1, 0}); }
/// The six Pauli eigenstates, ordered +x, -x, +y, -y, +z, -z.
inline std::array<DensityMatrix, 6> cardinal() { return {plus(), minus(), plus_i(), minus_i(), zero(), one()}; }
}  // namespace states

inline DensityMatrix apply_unitary_1q(const Mat2 &u, const DensityMatrix &state) {
    if (state.num_qubits() != 1) {
        throw std::invalid_argument("apply_unitary_1q: single-qubit state expected");
    }
    return DensityMatrix(1, u * state.matrix() * u.adjoint());
}

// ---------------------------------------------------------------------------
// Cluster states.

/// Diagonal of the controlled-Z entangler: entry b is (-1)^(number of edges
/// with both endpoints 1 in b).
inline Eigen::VectorXd cz_diagonal(const Lattice &lattice) {
    const int n = lattice.size();
    check_capacity(n);
    const std::size_t dim = std::size_t{1} << n;
    Eigen::VectorXd d(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        int parity = 0;
        for (auto [i, j] : lattice.edges()) {
            parity ^= ((b & site_mask(n, i)) && (b & site_mask(n, j))) ? 1 : 0;
        }
        d(b) = parity ? -1.0 : 1.0;
    }
    return d;
}

inline Matrix cz_entangler(const Lattice &lattice) {
    return cz_diagonal(lattice).cast<cplx>().asDiagonal();
}

/// U rho U with U the (real, diagonal, self-inverse) entangler.
inline DensityMatrix entangle(const DensityMatrix &state, const Lattice &lattice) {
    if (state.num_qubits() != lattice.size()) {
        throw std::invalid_argument("entangle: state has " + std::to_string(state.num_qubits()) +
                                    " qubits, lattice has " + std::to_string(lattice.size()));
    }
    Eigen::VectorXd d = cz_diagonal(lattice);
    Matrix m = state.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) *= d(r) * d(c);
        }
    }
    return DensityMatrix(state.num_qubits(), std::move(m));
}

inline Vector cluster_vector(const Lattice &lattice) {
    Eigen::VectorXd d = cz_diagonal(lattice);
    return d.cast<cplx>() / std::sqrt(static_cast<double>(d.size()));
}

inline DensityMatrix cluster_state(const Lattice &lattice) { return DensityMatrix::from_pure(cluster_vector(lattice)); }

/// Probability of a thermal Z error on one site: 1 / (1 + exp(delta / kT)).
inline double z_error_probability(double kT, double delta) {
    if (!(delta > 0)) {
        throw std::invalid_argument("gap must be positive");
    }
    if (kT < 0 || std::isnan(kT)) {
        throw std::invalid_argument("temperature must be non-negative");
    }
    if (kT == 0) {
        return 0.0;
    }
    if (std::isinf(kT)) {
        return 0.5;
    }
    return 1.0 / (1.0 + std::exp(delta / kT));
}

/// Cluster state with independent Z errors of probability p on every site.
/// Summing the 2^N error patterns in closed form: entry (r, c) of the pure
/// cluster state picks up (1 - 2p) for every site where r and c differ.
inline DensityMatrix z_error_cluster_state(const Lattice &lattice, double p) {
    if (p < 0 || p > 1) {
        throw std::invalid_argument("error probability outside [0, 1]");
    }
    const int n = lattice.size();
    Vector psi = cluster_vector(lattice);
    std::vector<double> damp(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) {
        damp[k] = damp[k - 1] * (1 - 2 * p);
    }
    Matrix m = psi * psi.adjoint();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            m(r, c) *= damp[std::popcount(static_cast<std::uint64_t>(r ^ c))];
        }
    }
    return DensityMatrix(n, std::move(m));
}

/// Gibbs state of the cluster Hamiltonian at temperature kT.
inline DensityMatrix thermal_cluster_state(const Lattice &lattice, double kT, double delta) {
    return z_error_cluster_state(lattice, z_error_probability(kT, delta));
}

// ---------------------------------------------------------------------------
// Measurement.

/// Single-qubit measurement basis: computational (Z) or an equatorial basis
/// at angle phi from the X axis, whose outcome-0 state is the +1 eigenstate of
/// cos(phi) X - sin(phi) Y.
struct Basis {
    enum class Kind { Z, XY } kind = Kind::XY;
    double angle = 0;

    static Basis z() { return {Kind::Z, 0}; }
    static Basis xy(double phi) { return {Kind::XY, phi}; }

    Mat2 observable() const {
        if (kind == Kind::Z) {
            return mat2::Z();
        }
        return std::cos(angle) * mat2::X() - std::sin(angle) * mat2::Y();
    }
    Mat2 projector(int outcome) const { return (mat2::I() + (outcome ? -1.0 : 1.0) * observable()) / 2.0; }
    std::string str() const { return kind == Kind::Z ? "Z" : "XY(" + std::to_string(angle) + ")"; }
};

struct MeasurementEvent {
    int site = 0;
    Basis basis;
    double time = 0;
    std::optional<int> outcome;
};

/// Chooses measurement outcomes: a fixed (possibly per-call) sequence, or
/// Born-rule sampling from a seeded generator.
class OutcomePolicy {
   public:
    static OutcomePolicy forced(int outcome) { return forced_sequence({outcome}); }
    /// Call k receives sequence[k % size]; {0} forces all zeros.
    static OutcomePolicy forced_sequence(std::vector<int> sequence) {
        for (int s : sequence) {
            if (s != 0 && s != 1) {
                throw std::invalid_argument("forced outcome must be 0 or 1");
            }
        }
        if (sequence.empty()) {
            throw std::invalid_argument("forced outcome sequence is empty");
        }
        OutcomePolicy p;
        p.forced_ = std::move(sequence);
        return p;
    }
    static OutcomePolicy sampled(std::uint64_t seed) {
        OutcomePolicy p;
        p.rng_.seed(seed);
        return p;
    }

    bool is_sampled() const { return forced_.empty(); }

    /// Picks an outcome given the probability of outcome 0.
    int choose(double p0) {
        if (!forced_.empty()) {
            return forced_[calls_++ % forced_.size()];
        }
        ++calls_;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return u(rng_) < p0 ? 0 : 1;
    }

   private:
    OutcomePolicy() = default;
    std::vector<int> forced_;
    std::mt19937_64 rng_;
    std::size_t calls_ = 0;
};

struct MeasureResult {
    int outcome = 0;
    DensityMatrix state;
    double probability = 0;
};

inline constexpr double kImpossibleOutcome = 1e-12;

/// Unnormalised P rho P for one outcome.
inline Matrix project(const DensityMatrix &state, int site, const Basis &basis, int outcome) {
    return conjugate_1q(basis.projector(outcome), state.num_qubits(), site, state.matrix());
}

inline double outcome_probability(const DensityMatrix &state, int site, const Basis &basis, int outcome) {
    if (site < 0 || site >= state.num_qubits()) {
        throw std::out_of_range("measure: invalid site " + std::to_string(site));
    }
    return project(state, site, basis, outcome).trace().real();
}

inline MeasureResult measure(const DensityMatrix &state, const MeasurementEvent &event, OutcomePolicy &policy) {
    const int n = state.num_qubits();
    if (event.site < 0 || event.site >= n) {
        throw std::out_of_range("measure: invalid site " + std::to_string(event.site));
    }
    if (!std::isfinite(event.basis.angle)) {
        throw std::invalid_argument("measure: non-finite angle");
    }
    double p0 = outcome_probability(state, event.site, event.basis, 0);
    int outcome = event.outcome ? *event.outcome : policy.choose(p0);
    Matrix post = project(state, event.site, event.basis, outcome);
    double p = post.trace().real();
    if (p < kImpossibleOutcome) {
        throw std::domain_error("measure: outcome " + std::to_string(outcome) + " on site " +
                                std::to_string(event.site) + " has probability " + std::to_string(p));
    }
    return {outcome, DensityMatrix(n, post / p), p};
}

inline MeasureResult measure(const DensityMatrix &state, const MeasurementEvent &event, OutcomePolicy &&policy) {
    return measure(state, event, policy);
}

// ---------------------------------------------------------------------------
// Reductions and metrics.

/// Reduced state on the kept sites, in ascending site order.
inline DensityMatrix partial_trace(const DensityMatrix &state, const std::set<int> &keep) {
    const int n = state.num_qubits();
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    for (int s : keep) {
        if (s < 0 || s >= n) {
            throw std::out_of_range("partial_trace: invalid site " + std::to_string(s));
        }
    }
    const int k = static_cast<int>(keep.size());
    std::vector<int> kept(keep.begin(), keep.end());
    std::vector<int> traced;
    for (int s = 0; s < n; ++s) {
        if (!keep.count(s)) traced.push_back(s);
    }
    const std::size_t dk = std::size_t{1} << k;
    const std::size_t dt = std::size_t{1} << traced.size();
    auto compose = [&](std::size_t a, std::size_t e) {
        std::size_t idx = 0;
        for (int j = 0; j < k; ++j) {
            if (a & site_mask(k, j)) idx |= site_mask(n, kept[j]);
        }
        for (std::size_t j = 0; j < traced.size(); ++j) {
            if (e & site_mask(static_cast<int>(traced.size()), static_cast<int>(j))) idx |= site_mask(n, traced[j]);
        }
        return idx;
    };
    Matrix out = Matrix::Zero(dk, dk);
    const Matrix &m = state.matrix();
    for (std::size_t e = 0; e < dt; ++e) {
        for (std::size_t a = 0; a < dk; ++a) {
            std::size_t r = compose(a, e);
            for (std::size_t b = 0; b < dk; ++b) {
                out(a, b) += m(r, compose(b, e));
            }
        }
    }
    return DensityMatrix(k, std::move(out));
}

inline Matrix psd_sqrt(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2. When either state is pure
/// this is Tr(a b), evaluated directly to keep full precision.
inline double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    constexpr double kPureTol = 1e-12;
    if (std::abs(a.purity() - 1) < kPureTol || std::abs(b.purity() - 1) < kPureTol) {
        return std::clamp((a.matrix() * b.matrix()).trace().real(), 0.0, 1.0);
    }
    Matrix sa = psd_sqrt(a.matrix());
    Matrix inner = sa * b.matrix() * sa;
    Eigen::SelfAdjointEigenSolver<Matrix> es((inner + inner.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    double s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(s * s, 0.0, 1.0);
}

inline double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    Matrix d = a.matrix() - b.matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> es((d + d.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace clusterdyn

#endif  // CLUSTERDYN_STATE_HPP
