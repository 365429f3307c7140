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

#ifndef CLUSTERDYN_DYNAMICS_HPP
#define CLUSTERDYN_DYNAMICS_HPP

#include <array>
#include <cmath>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "clusterdyn/lattice.hpp"
#include "clusterdyn/numerics/rk4.hpp"
#include "clusterdyn/pauli.hpp"
#include "clusterdyn/state.hpp"

namespace clusterdyn {

/// Receives non-fatal diagnostics (weak-coupling violations and the like).
/// Defaults to printing on stderr; replace to silence or capture.
inline std::function<void(const std::string &)> &warning_handler() {
    static std::function<void(const std::string &)> handler = [](const std::string &msg) {
        std::cerr << "warning: " << msg << '\n';
    };
    return handler;
}

inline void warn(const std::string &msg) {
    if (warning_handler()) {
        warning_handler()(msg);
    }
}

/// Like warn, but each distinct message is reported once per process.
inline void warn_once(const std::string &msg) {
    static std::mutex mu;
    static std::set<std::string> seen;
    {
        std::lock_guard lock(mu);
        if (!seen.insert(msg).second) return;
    }
    warn(msg);
}

/// Bath coupling rates, per site and in units of the gap.
///
/// Single bath: rate alpha for |-> to |+> decay and beta for the reverse.
/// Two baths: a zero-temperature cooling bath at rate alpha_bath plus an
/// infinite-temperature background at rate gamma. The second form is the
/// first with alpha = alpha_bath + gamma and beta = gamma.
class BathSpec {
   public:
    struct Single {
        double alpha = 0, beta = 0;
    };
    struct TwoBath {
        double alpha_bath = 0, gamma = 0;
    };

    BathSpec() = default;
    static BathSpec single(double alpha, double beta) { return BathSpec(Single{alpha, beta}); }
    static BathSpec two_bath(double alpha_bath, double gamma) { return BathSpec(TwoBath{alpha_bath, gamma}); }
    static BathSpec none() { return single(0, 0); }

    bool is_two_bath() const { return std::holds_alternative<TwoBath>(rates_); }
    const std::variant<Single, TwoBath> &rates() const { return rates_; }

    double alpha() const {
        if (auto *s = std::get_if<Single>(&rates_)) return s->alpha;
        auto &t = std::get<TwoBath>(rates_);
        return t.alpha_bath + t.gamma;
    }
    double beta() const {
        if (auto *s = std::get_if<Single>(&rates_)) return s->beta;
        return std::get<TwoBath>(rates_).gamma;
    }
    double total() const { return alpha() + beta(); }
    double difference() const { return alpha() - beta(); }

    /// The equivalent single-bath description.
    BathSpec as_single() const { return single(alpha(), beta()); }

    std::string str() const {
        std::ostringstream out;
        out.precision(9);
        if (auto *s = std::get_if<Single>(&rates_)) {
            out << "alpha=" << s->alpha << " beta=" << s->beta;
        } else {
            auto &t = std::get<TwoBath>(rates_);
            out << "alpha_bath=" << t.alpha_bath << " gamma=" << t.gamma;
        }
        return out.str();
    }

   private:
    explicit BathSpec(std::variant<Single, TwoBath> r) : rates_(r) {
        std::visit(
            [](const auto &v) {
                auto check = [](double x) {
                    if (!(x >= 0) || !std::isfinite(x)) {
                        throw std::invalid_argument("bath rates must be finite and non-negative");
                    }
                };
                if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Single>) {
                    check(v.alpha);
                    check(v.beta);
                } else {
                    check(v.alpha_bath);
                    check(v.gamma);
                }
            },
            rates_);
    }
    std::variant<Single, TwoBath> rates_ = Single{};
};

struct SystemParams {
    double delta = 1.0;
    Lattice lattice;
    /// Sites with no bath coupling (free evolution only).
    std::set<int> decoupled_sites;

    SystemParams() = default;
    SystemParams(double d, Lattice l, std::set<int> decoupled = {})
        : delta(d), lattice(std::move(l)), decoupled_sites(std::move(decoupled)) {
        if (!(delta > 0)) {
            throw std::invalid_argument("gap must be positive");
        }
    }

    /// Clock period 2 pi / delta.
    double tau() const { return 2 * std::numbers::pi / delta; }
};

inline double clock_period(double delta) { return 2 * std::numbers::pi / delta; }

enum class Picture { Original, Dual };
enum class Integrator { RK4, ExactKraus };

inline double default_rk4_step(double delta) { return clock_period(delta) / 2000; }

/// kT = delta / ln(alpha / beta); two baths give delta / ln(1 + alpha_bath / gamma).
inline double bath_temperature(const BathSpec &bath, double delta) {
    const double a = bath.alpha(), b = bath.beta();
    if (b > a) {
        throw std::domain_error("beta > alpha corresponds to a negative temperature");
    }
    if (a == 0) {
        throw std::domain_error("temperature undefined for a bath with alpha = 0");
    }
    if (b == 0) {
        return 0.0;
    }
    if (a == b) {
        return std::numeric_limits<double>::infinity();
    }
    return delta / std::log(a / b);
}

/// Single-qubit stationary state alpha/(alpha+beta) |+><+| + beta/(alpha+beta) |-><-|.
inline DensityMatrix equilibrium_state(const BathSpec &bath) {
    const double g = bath.total();
    if (!(g > 0)) {
        throw std::domain_error("no unique equilibrium when alpha = beta = 0");
    }
    return bloch_to_state({bath.difference() / g, 0, 0});
}

/// The same state written through the temperature: populations of |->
/// equal to 1 / (1 + exp(delta / kT)).
inline DensityMatrix equilibrium_state_at(double kT, double delta) {
    double p = z_error_probability(kT, delta);
    return bloch_to_state({1 - 2 * p, 0, 0});
}

/// N copies of a single-qubit state.
inline DensityMatrix power_state(const DensityMatrix &one, int n) {
    return product_state(std::vector<DensityMatrix>(static_cast<std::size_t>(n), one));
}

inline void check_weak_coupling(const BathSpec &bath, double delta) {
    if (bath.total() > 0.1 * delta) {
        warn_once("alpha + beta = " + std::to_string(bath.total()) + " exceeds 0.1 * delta; the master equation assumes weak coupling");
    }
}

// ---------------------------------------------------------------------------
// Closed-form single-qubit map in the dual picture.

/// Kraus operators M1..M4 of the single-site map after time t. With
/// alpha = beta = 0 only M1 is nonzero and is the free unitary.
inline std::array<Mat2, 4> kraus_operators(const BathSpec &bath, double delta, double t) {
    if (t < 0) {
        throw std::invalid_argument("kraus_step: negative time");
    }
    const Mat2 pp = mat2::plus_proj(), mm = mat2::minus_proj();
    const cplx ph = std::polar(1.0, delta * t);
    const double a = bath.alpha(), b = bath.beta(), g = a + b;
    if (g == 0) {
        const cplx half = std::polar(1.0, delta * t / 2);
        return {half * pp + std::conj(half) * mm, Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};
    }
    const double decay = std::exp(-g * t / 2);
    const double jump = -std::expm1(-g * t);
    return {
        std::sqrt(a / g) * (ph * pp + decay * mm),
        std::sqrt(b / g) * (std::conj(ph) * mm + decay * pp),
        std::sqrt(a * jump / g) * mat2::plus_minus(),
        std::sqrt(b * jump / g) * mat2::minus_plus(),
    };
}

inline Matrix apply_kraus_site(const std::array<Mat2, 4> &ks, int n, int site, const Matrix &m) {
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (const Mat2 &k : ks) {
        if (k.isZero(0)) continue;
        out += conjugate_1q(k, n, site, m);
    }
    return out;
}

inline DensityMatrix kraus_step(const DensityMatrix &state, const BathSpec &bath, double delta, double t) {
    if (state.num_qubits() != 1) {
        throw std::invalid_argument("kraus_step: single-qubit state expected");
    }
    return DensityMatrix(1, apply_kraus_site(kraus_operators(bath, delta, t), 1, 0, state.matrix()));
}

// ---------------------------------------------------------------------------
// Lindblad generator.

/// Pictures are related by the entangler U: rho_dual = U rho U.
inline DensityMatrix dual_map(const DensityMatrix &state, const Lattice &lattice) { return entangle(state, lattice); }

/// Dense generator of the master equation, prepared once per (system, bath,
/// picture). In the dual picture each site evolves under -(delta/2) X_i and
/// the dissipators D[|+><-|], D[|-><+|]; the original picture conjugates
/// every operator by U.
class Lindbladian {
   public:
    Lindbladian(const SystemParams &params, const BathSpec &bath, Picture picture)
        : n_(params.lattice.size()), picture_(picture) {
        check_capacity(n_);
        check_weak_coupling(bath, params.delta);
        const Eigen::Index dim = Eigen::Index{1} << n_;
        Eigen::VectorXd u = cz_diagonal(params.lattice);
        auto to_picture = [&](Matrix m) {
            if (picture == Picture::Original) {
                for (Eigen::Index r = 0; r < dim; ++r)
                    for (Eigen::Index c = 0; c < dim; ++c) m(r, c) *= u(r) * u(c);
            }
            return m;
        };
        auto site_op = [&](const Mat2 &a, int s) {
            Matrix m = Matrix::Identity(dim, dim);
            apply_1q_left(a, n_, s, m);
            return m;
        };

        Matrix h = Matrix::Zero(dim, dim);
        for (int s = 0; s < n_; ++s) {
            h += -(params.delta / 2) * site_op(mat2::X(), s);
        }
        hamiltonian_ = to_picture(h);

        std::vector<std::pair<double, Mat2>> rates;
        if (auto *tb = std::get_if<BathSpec::TwoBath>(&bath.rates())) {
            rates = {{tb->alpha_bath, mat2::plus_minus()}, {tb->gamma, mat2::plus_minus()}, {tb->gamma, mat2::minus_plus()}};
        } else {
            rates = {{bath.alpha(), mat2::plus_minus()}, {bath.beta(), mat2::minus_plus()}};
        }
        h_eff_ = hamiltonian_;
        for (int s = 0; s < n_; ++s) {
            if (params.decoupled_sites.count(s)) continue;
            for (auto &[rate, op] : rates) {
                if (rate == 0) continue;
                Matrix j = to_picture(std::sqrt(rate) * site_op(op, s));
                h_eff_ += cplx(0, -0.5) * (j.adjoint() * j);
                jumps_.push_back(std::move(j));
            }
        }
    }

    int num_qubits() const { return n_; }
    Picture picture() const { return picture_; }
    const Matrix &hamiltonian() const { return hamiltonian_; }
    const std::vector<Matrix> &jumps() const { return jumps_; }

    /// d rho / dt = -i (H_eff rho - rho H_eff^dagger) + sum_J J rho J^dagger.
    Matrix operator()(const Matrix &rho) const {
        Matrix hr = h_eff_ * rho;
        Matrix out = cplx(0, -1) * (hr - hr.adjoint());
        for (const Matrix &j : jumps_) {
            out.noalias() += j * rho * j.adjoint();
        }
        return out;
    }

   private:
    int n_;
    Picture picture_;
    Matrix hamiltonian_;
    Matrix h_eff_;
    std::vector<Matrix> jumps_;
};

inline Matrix lindblad_rhs(const DensityMatrix &state, const SystemParams &params, const BathSpec &bath,
                           Picture picture) {
    if (state.num_qubits() != params.lattice.size()) {
        throw std::invalid_argument("lindblad_rhs: state has " + std::to_string(state.num_qubits()) +
                                    " qubits, lattice has " + std::to_string(params.lattice.size()));
    }
    return Lindbladian(params, bath, picture)(state.matrix());
}

/// Fixed-step RK4 on a prepared generator, renormalising the trace after
/// every step.
inline DensityMatrix lindblad_evolve(const DensityMatrix &state, const Lindbladian &gen, double t, double step) {
    if (state.num_qubits() != gen.num_qubits()) {
        throw std::invalid_argument("lindblad_evolve: dimension mismatch");
    }
    Matrix rho = numerics::rk4(
        state.matrix(), [&](const Matrix &r) { return gen(r); }, t, step,
        [](Matrix &r) { r /= r.trace().real(); });
    return DensityMatrix(state.num_qubits(), std::move(rho));
}

inline DensityMatrix lindblad_evolve(const DensityMatrix &state, const SystemParams &params, const BathSpec &bath,
                                     Picture picture, double t, double step) {
    if (state.num_qubits() != params.lattice.size()) {
        throw std::invalid_argument("lindblad_evolve: state has " + std::to_string(state.num_qubits()) +
                                    " qubits, lattice has " + std::to_string(params.lattice.size()));
    }
    return lindblad_evolve(state, Lindbladian(params, bath, picture), t, step);
}

/// Exact evolution: the dual-picture generator is a sum of independent
/// single-site terms, so the flow is the product of the per-site Kraus maps.
inline DensityMatrix kraus_evolve(const DensityMatrix &state, const SystemParams &params, const BathSpec &bath,
                                  Picture picture, double t) {
    const int n = state.num_qubits();
    if (n != params.lattice.size()) {
        throw std::invalid_argument("kraus_evolve: dimension mismatch");
    }
    check_weak_coupling(bath, params.delta);
    Matrix m = picture == Picture::Original ? dual_map(state, params.lattice).matrix() : state.matrix();
    const auto coupled = kraus_operators(bath, params.delta, t);
    const auto free = kraus_operators(BathSpec::none(), params.delta, t);
    for (int s = 0; s < n; ++s) {
        m = apply_kraus_site(params.decoupled_sites.count(s) ? free : coupled, n, s, m);
    }
    DensityMatrix out(n, std::move(m));
    return picture == Picture::Original ? dual_map(out, params.lattice) : out;
}

/// Evolution options shared by the experiment drivers.
struct EvolveOptions {
    Integrator integrator = Integrator::RK4;
    /// Zero selects the default step tau / 2000.
    double rk4_step = 0;
};

inline DensityMatrix evolve(const DensityMatrix &state, const SystemParams &params, const BathSpec &bath,
                            Picture picture, double t, const EvolveOptions &opt = {}) {
    if (opt.integrator == Integrator::ExactKraus) {
        return kraus_evolve(state, params, bath, picture, t);
    }
    double step = opt.rk4_step > 0 ? opt.rk4_step : default_rk4_step(params.delta);
    return lindblad_evolve(state, params, bath, picture, t, step);
}

/// rho_I = exp(i H_c t) rho exp(-i H_c t) for an original-picture state.
inline DensityMatrix interaction_picture(const DensityMatrix &state, const SystemParams &params, double t) {
    const int n = state.num_qubits();
    Matrix m = dual_map(state, params.lattice).matrix();
    // In the dual picture H = -(delta/2) sum X, so exp(iHt) = prod exp(-i delta t X / 2).
    const Mat2 r = mat2::xrot(params.delta * t);
    for (int s = 0; s < n; ++s) {
        m = conjugate_1q(r, n, s, m);
    }
    return dual_map(DensityMatrix(n, std::move(m)), params.lattice);
}

/// U rho_e^{(x)N} U: the stationary state in the original picture.
inline DensityMatrix entangled_equilibrium(const BathSpec &bath, const Lattice &lattice) {
    return entangle(power_state(equilibrium_state(bath), lattice.size()), lattice);
}

}  // namespace clusterdyn

#endif  // CLUSTERDYN_DYNAMICS_HPP
